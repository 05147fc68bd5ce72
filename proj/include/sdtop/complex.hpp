#ifndef SDTOP_COMPLEX_HPP
#define SDTOP_COMPLEX_HPP

#include <unordered_map>
#include <vector>

#include "sdtop/simplex.hpp"

namespace sdtop {

/// Extended face vector (f_{-1}, f_0, ..., f_n). The f_{-1} slot is a
/// convention value supplied by the caller, never inferred.
struct FVector {
    std::vector<long long> entries;

    long long operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }
    std::size_t size() const { return entries.size(); }
    bool operator==(const FVector& o) const { return entries == o.entries; }
};

/// A finite abstract simplicial complex: per-dimension sets of simplices,
/// closed under taking faces. Immutable after construction; safe to share
/// across threads.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Face closure of the given simplices.
    static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal);

    /// Uses the given simplices as-is; throws if not face-closed.
    static SimplicialComplex from_simplices(std::vector<Simplex> simplices);

    /// Dimension, or -1 for the empty complex.
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    bool is_empty() const { return by_dim_.empty(); }

    /// Simplices of dimension d in lexicographic order.
    const std::vector<Simplex>& simplices(int d) const;
    long long count(int d) const {
        return (d < 0 || d > dim()) ? 0 : static_cast<long long>(by_dim_[static_cast<std::size_t>(d)].size());
    }
    long long total_count() const;

    bool contains(const Simplex& s) const { return index_of(s) >= 0; }
    /// Position of s within its dimension's lex order, or -1.
    int index_of(const Simplex& s) const;

    /// Flat id across dimensions: offset(dim) + index. Used for dense tables.
    long long flat_id(int d, int idx) const { return offsets_[static_cast<std::size_t>(d)] + idx; }
    long long flat_id(const Simplex& s) const { return flat_id(s.dim(), index_of(s)); }

    long long vertex_count() const { return count(0); }

    FVector f_vector(long long f_minus_one) const;
    long long euler_characteristic() const;

    bool has_subcomplex(const SimplicialComplex& sub) const;
    std::vector<Simplex> maximal_simplices() const;

private:
    void build_index();

    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index_;
    std::vector<long long> offsets_;
};

/// The standard n-simplex on vertices {0..n}, all faces present.
SimplicialComplex standard_simplex(int n);

/// Boundary of the standard n-simplex (n >= 1): all proper faces.
SimplicialComplex boundary_complex(int n);

/// The i-skeleton, 0 <= i <= dim K.
SimplicialComplex skeleton(const SimplicialComplex& k, int i);

/// Cone over K with a fresh apex vertex.
SimplicialComplex cone(const SimplicialComplex& k, VertexId apex);

/// Restriction of K to the simplices selected by `keep` (flat ids); the
/// selection must be face-closed.
SimplicialComplex subcomplex_from_flags(const SimplicialComplex& k, const std::vector<char>& keep);

/// Closure of the given simplices inside K (verifies membership).
SimplicialComplex closure_in(const SimplicialComplex& k, const std::vector<Simplex>& members);

}  // namespace sdtop

#endif  // SDTOP_COMPLEX_HPP
