#ifndef SDTOP_PACKING_HPP
#define SDTOP_PACKING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdtop/complex.hpp"
#include "sdtop/random_hypersurface.hpp"
#include "sdtop/rational.hpp"
#include "sdtop/subdivision.hpp"
#include "sdtop/tiling.hpp"

namespace sdtop {

/// A family of simplices of an ambient complex with bounded pairwise
/// intersection dimension.
struct Packing {
    std::shared_ptr<const SimplicialComplex> ambient;
    std::vector<Simplex> members;
    int big = -1;  // the distinguished simplex of the recursive constructions

    /// Member counts per dimension, 0..dim(ambient).
    std::vector<long long> counts_by_dim() const;
};

struct PackingViolation {
    int a = -1, b = -1;  // member indices; b = -1 against the boundary
    int dim = -1;        // offending intersection dimension
};

struct PackingReport {
    bool ok = true;
    std::vector<PackingViolation> violations;
    std::string summary() const;
};

/// Checks every pairwise intersection (and, when a boundary subcomplex is
/// given, every member-boundary intersection) has dimension < dim_bound.
/// Disjoint simplices intersect in dimension -1.
PackingReport validate_packing(const Packing& p, int dim_bound,
                               const SimplicialComplex* boundary = nullptr);

/// Packing of disjoint simplices in Sd(Delta_n): one n-simplex and
/// 2^{n-1-j} simplices of dimension j for j < n.
Packing pack_disjoint_sd(int n);

/// Packing of disjoint simplices in Sd(T^n_s), s >= 1: one (n+1-s)-simplex
/// of flag form plus 2^{n-1-s-j} j-simplices when s <= n-1.
Packing pack_disjoint_sd_tile(int n, int s);

/// Packing of Sd(T^n_s) whose members intersect each other, and the rest of
/// the subdivided boundary, in dimension < p.
Packing pack_overlap(int n, int s, int p);

/// Tile-wise union of the packings over a tiled complex, transported through
/// each tile's top cell; p = 0 uses the disjoint constructions.
Packing pack_tiled_complex(const Tiling& t, const SubdivisionResult& s, int p);

// Closed-form member counts (per dimension) for the packing theorems.
std::vector<long long> thm51_counts(int n, int s);
std::vector<long long> thm53_counts(int n, int s, int p);
std::vector<long long> tiled_pack_counts(const HVector& h, int n, int p);

/// Morse-type bound
/// (nu^{p+1}+(1-nu)^{p+1}) b_p + nu(1-nu)(nu^p+(1-nu)^p) *
///   sum_{i=p+1}^{dim} (-1)^{i+1-p} (f_i - b_i).
Rat m_p_nu(const SimplicialComplex& k, int p, const Rat& nu);

struct InequalityReport {
    bool ok = true;
    Rat lhs, rhs;
};

/// E_nu(b_p(K_0)) <= M_{p,nu}(K), exact enumeration.
InequalityReport upper_bound_check(const SimplicialComplex& k, int p, const Rat& nu,
                                   int budget_log2 = kDefaultEnumerationBudgetLog2);

struct MonotonyReport {
    bool ok = true;
    Rat slack_l, slack_k;        // M - E(b_p) for L and K
    Rat f_slack_l, f_slack_k;    // E(f_p) - E(b_p) for L and K
};

/// Both inequalities 0 <= M(L) - E(b_p(L_0)) <= M(K) - E(b_p(K_0)) and the
/// f-variant. Expectations for L use the marginal of the product measure.
MonotonyReport monotony_check(const SimplicialComplex& k, const SimplicialComplex& l, int p,
                              const Rat& nu, int budget_log2 = kDefaultEnumerationBudgetLog2);

struct BoundReport {
    int n = 0, p = 0, d = 0;
    Rat nu;
    Rat value;
    std::string kind;
    std::string provenance;
};

/// Certified lower bound for lambda^d_{p,nu}(n): the packing from the
/// induced tiling of Sd^{d-1}(T^n_{n+1}) with overlap parameter p-1,
/// validated against the lambda feasibility conditions, evaluated by
/// M_{p,nu} and normalized by (n+1)!^d.
BoundReport lambda_lower_bound(int n, int p, const Rat& nu, int d,
                               long long budget = kDefaultTopCellBudget);

/// Exact evaluation of the closed-form asymptotic lower bound for
/// lambda_{p,nu}(n) in terms of the eigenvector h^n.
BoundReport mnp_rhs(int n, int p, const Rat& nu);

struct EUpperReport {
    int n = 0, p = 0;
    Rat nu;
    Rat q_term;     // the pure asymptotic-face-number bound
    Rat lambda_lb;  // certified lower bound used for lambda
    Rat improved;   // q_term - lambda_lb
};

/// Upper bound for e_{p,nu}(n,1); a lower bound on lambda tightens it since
/// lambda enters negatively.
EUpperReport e_upper_bound(int n, int p, const Rat& nu,
                           std::optional<Rat> lambda_lb = std::nullopt);

/// Exhaustive maximum of M_{p,nu} over families of simplices meeting the
/// lambda feasibility conditions (pairwise and boundary intersections of
/// dimension < p-1). Feasible only when few candidates survive the boundary
/// filter; throws BudgetExceeded otherwise.
Rat brute_force_lambda_max(const SimplicialComplex& sd_complex, const SimplicialComplex& boundary,
                           int p, const Rat& nu, int max_candidates = 24);

}  // namespace sdtop

#endif  // SDTOP_PACKING_HPP
