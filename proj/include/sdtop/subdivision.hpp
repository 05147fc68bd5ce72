#ifndef SDTOP_SUBDIVISION_HPP
#define SDTOP_SUBDIVISION_HPP

#include <unordered_map>
#include <vector>

#include "sdtop/complex.hpp"
#include "sdtop/exact_linalg.hpp"
#include "sdtop/rational.hpp"

namespace sdtop {

/// Barycentric subdivision of a complex. A q-simplex of the result is a
/// strict flag s_0 < s_1 < ... < s_q of simplices of the parent; the vertex
/// registry sends each new vertex id to the parent simplex it subdivides.
/// New vertex ids follow the lexicographic order of parent simplices.
struct SubdivisionResult {
    SimplicialComplex complex;
    std::vector<Simplex> vertex_parent;

    /// New vertex id of a parent simplex, or -1.
    int vertex_of(const Simplex& parent) const {
        auto it = parent_to_vertex.find(parent);
        return it == parent_to_vertex.end() ? -1 : it->second;
    }
    /// The flag of parent simplices behind an Sd-simplex, shortest first.
    std::vector<Simplex> flag_of(const Simplex& sd_simplex) const;
    /// Top (longest) parent of an Sd-simplex's flag.
    const Simplex& top_parent_of(const Simplex& sd_simplex) const;
    /// Minimal (shortest) parent of an Sd-simplex's flag.
    const Simplex& min_parent_of(const Simplex& sd_simplex) const;

    std::unordered_map<Simplex, int, SimplexHash> parent_to_vertex;
};

inline constexpr long long kDefaultTopCellBudget = 10'000'000;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SubdivisionResult subdivide(const SimplicialComplex& k);

/// A chain of d subdivisions; steps[i] subdivides the complex before it.
struct SubdivisionChain {
    SimplicialComplex base;
    std::vector<SubdivisionResult> steps;

    const SimplicialComplex& final_complex() const {
        return steps.empty() ? base : steps.back().complex;
    }
    int depth() const { return static_cast<int>(steps.size()); }
};

/// d-fold barycentric subdivision. Refuses when the projected top-cell
/// count f_n(K) * (n+1)!^d exceeds the budget.
SubdivisionChain subdivide_iter(const SimplicialComplex& k, int d,
                                long long top_cell_budget = kDefaultTopCellBudget);

/// Sd(L) inside Sd(K): the flags all of whose elements lie in L.
SimplicialComplex transport_subcomplex(const SubdivisionResult& s, const SimplicialComplex& sub);

/// Flat-id flags of Sd(K)-simplices whose parents all satisfy `in_sub`.
std::vector<char> transport_subcomplex_flags(const SimplicialComplex& k,
                                             const SubdivisionResult& s,
                                             const std::vector<char>& in_sub);

/// Interior-face matrix: entries[i][j] (0-indexed) counts the (j-2)-dimensional
/// interior faces of Sd(Delta_{i-2}), i.e. flags ending at the full simplex.
/// Lower triangular with diagonal (i-1)!.
struct LambdaMatrix {
    int n = 0;
    IntMat entries;
};

LambdaMatrix lambda_matrix(int n);

/// Extended f-vector transform under one subdivision: ext_f(Sd K) = ext_f(K) * Lambda_n.
std::vector<long long> apply_lambda(const FVector& ext_f, const LambdaMatrix& lambda);

/// Asymptotic face numbers q_{l,n} = lim f_l(Sd^d(Delta_n)) / (n+1)!^d,
/// solved exactly as the (n+1)!-eigenvector of Lambda_n^t, normalized with
/// q_{n,n} = 1.
struct AsymptoticFaceVector {
    int n = 0;
    std::vector<Rat> q;  // q[0..n]
};

AsymptoticFaceVector asymptotic_face_vector(int n);

}  // namespace sdtop

#endif  // SDTOP_SUBDIVISION_HPP
