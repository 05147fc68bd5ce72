#ifndef SDTOP_HOMOLOGY_HPP
#define SDTOP_HOMOLOGY_HPP

#include <unordered_map>
#include <vector>

#include "sdtop/complex.hpp"
#include "sdtop/gf2.hpp"

namespace sdtop {

/// Chain complex over Z/2. boundary[p] lists, for each degree-p cell, the
/// indices of its boundary cells in degree p-1 (mod-2 chain, so each index
/// appears at most once). verify() checks index ranges and dd = 0.
struct Gf2ChainComplex {
    std::vector<int> sizes;
    std::vector<std::vector<std::vector<int>>> boundary;

    int top_degree() const { return static_cast<int>(sizes.size()) - 1; }
    void verify() const;
    std::vector<int> betti() const;
    Gf2Matrix boundary_matrix(int p) const;
};

/// Simplicial chain complex of K; bases in lexicographic simplex order.
Gf2ChainComplex chain_complex_of(const SimplicialComplex& k);

/// Z/2 Betti numbers (b_0, ..., b_n). Empty complex yields an empty vector.
std::vector<int> betti(const SimplicialComplex& k);

/// Betti numbers of the pair (K, L): basis is the simplices of K not in L,
/// boundary is projected away from L. Throws if L is not a subcomplex of K.
std::vector<int> relative_betti(const SimplicialComplex& k, const SimplicialComplex& l);

struct Components {
    int count = 0;
    std::unordered_map<VertexId, int> vertex_component;
    /// component[d][i] for the i-th d-simplex (lex order).
    std::vector<std::vector<int>> simplex_component;
};

/// Connected components via union-find on the 1-skeleton.
Components connected_components(const SimplicialComplex& k);

/// Plain union-find over 0..n-1.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(b)] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

}  // namespace sdtop

#endif  // SDTOP_HOMOLOGY_HPP
