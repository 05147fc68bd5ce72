#ifndef SDTOP_RANDOM_HYPERSURFACE_HPP
#define SDTOP_RANDOM_HYPERSURFACE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "sdtop/complex.hpp"
#include "sdtop/homology.hpp"
#include "sdtop/rational.hpp"
#include "sdtop/subdivision.hpp"

namespace sdtop {

/// Product Bernoulli measure on cochains: a bit takes value 0 with
/// probability nu, independently per simplex.
struct BernoulliMeasure {
    Rat nu;

    explicit BernoulliMeasure(Rat v) : nu(std::move(v)) {
        if (nu < 0 || nu > 1) throw std::invalid_argument("BernoulliMeasure: nu must be in [0,1]");
    }
};

/// Z/2 cochain in degree k-1: one bit per (k-1)-simplex of the carrier, in
/// the carrier's lexicographic simplex order.
struct Cochain {
    int k = 1;
    std::vector<std::uint8_t> bits;
};

/// A complex together with its barycentric subdivision and the dense lookup
/// tables used by the random-hypersurface machinery: per-simplex k-faces for
/// coboundary evaluation, minimal flag elements for dual-block membership,
/// and optional per-simplex marks (bit 0 tracks the ambient boundary for the
/// interior Betti numbers, bit 1 the distinguished cell boundary used by the
/// percolation estimator). Immutable after construction.
class SdCarrier {
public:
    /// Carrier Sd^d(Delta_n) with the boundary subcomplex tracked through
    /// the subdivision registries.
    static std::shared_ptr<const SdCarrier> over_simplex(int n, int d, int k,
                                                         long long budget = kDefaultTopCellBudget);
    static std::shared_ptr<const SdCarrier> over_complex(const SimplicialComplex& base, int k);
    static std::shared_ptr<const SdCarrier> over_marked_complex(const SimplicialComplex& base, int k,
                                                                std::vector<std::uint8_t> base_marks);

    const SimplicialComplex& base() const { return base_; }
    const SubdivisionResult& sd() const { return sd_; }
    const SimplicialComplex& sd_complex() const { return sd_.complex; }
    int k() const { return k_; }
    int cochain_length() const { return static_cast<int>(base_.count(k_ - 1)); }
    bool has_marks() const { return !base_marks_.empty(); }

    // Dense tables, indexed by flat ids (see SimplicialComplex::flat_id).
    const std::vector<std::vector<int>>& k_simplex_faces() const { return k_simplex_faces_; }
    const std::vector<std::vector<int>>& k_faces_of_base() const { return k_faces_of_base_; }
    const std::vector<long long>& sd_min_parent() const { return sd_min_parent_; }
    const std::vector<long long>& sd_vertex_parent() const { return sd_vertex_parent_; }
    const std::vector<std::uint8_t>& sd_vertex_marks() const { return sd_vertex_marks_; }
    const std::vector<std::uint8_t>& base_marks() const { return base_marks_; }
    const Gf2ChainComplex& sd_chain() const { return sd_chain_; }
    const Gf2ChainComplex& base_chain() const { return base_chain_; }
    const std::vector<std::vector<int>>& base_vertex_indices() const { return base_vertex_indices_; }

private:
    SdCarrier(SimplicialComplex base, int k, std::vector<std::uint8_t> marks);

    SimplicialComplex base_;
    SubdivisionResult sd_;
    int k_;
    std::vector<std::uint8_t> base_marks_;

    std::vector<std::vector<int>> k_simplex_faces_;   // per k-simplex: (k-1)-face indices
    std::vector<std::vector<int>> k_faces_of_base_;   // per base flat id: k-face indices
    std::vector<long long> sd_min_parent_;            // per sd flat id: base flat id
    std::vector<long long> sd_vertex_parent_;         // per sd vertex: base flat id
    std::vector<std::uint8_t> sd_vertex_marks_;
    Gf2ChainComplex sd_chain_;
    Gf2ChainComplex base_chain_;
    std::vector<std::vector<int>> base_vertex_indices_;  // per base flat id: vertex indices
};

/// The subcomplex V_eps of Sd(base) dual to the cocycle d(eps): the flags
/// whose minimal element has a k-face where d(eps) is nonzero.
struct HypersurfaceComplex {
    std::shared_ptr<const SdCarrier> carrier;
    std::vector<char> member;  // per sd flat id

    bool is_empty() const;
    std::vector<long long> face_counts() const;
    SimplicialComplex as_complex() const;
};

Cochain sample_cochain(const SimplicialComplex& k, int deg_k, const BernoulliMeasure& measure,
                       std::uint64_t seed);

/// <d(eps), sigma> for a k-simplex sigma: mod-2 sum of eps over its facets.
int coboundary_value(const SimplicialComplex& k, const Cochain& eps, const Simplex& sigma);

HypersurfaceComplex build_hypersurface(std::shared_ptr<const SdCarrier> carrier, const Cochain& eps);
HypersurfaceComplex build_hypersurface(const SimplicialComplex& k, const Cochain& eps);

std::vector<int> betti(const HypersurfaceComplex& v);

/// K_i^eps for a vertex cochain (k = 1): simplices on whose vertices one of
/// the two values occurs at most i times. K_0 is where eps is constant.
SimplicialComplex filtration_level(const SimplicialComplex& k, const Cochain& eps, int i);

/// The relative chain complex C_*(K, K_0^eps) reindexed down one degree:
/// degree-p basis is the (p+1)-simplices where eps is non-constant, with the
/// boundary projected onto non-constant simplices. Its Betti numbers equal
/// those of V_eps.
Gf2ChainComplex shifted_relative_complex(const SimplicialComplex& k, const Cochain& eps);

/// Per-degree sums of component Betti numbers over the connected components
/// of V that avoid the carrier's marked boundary.
std::vector<int> betti_tilde(const HypersurfaceComplex& v);

enum class Quantity { BettiV, BettiTildeV, BettiK0, FaceCountK0, EulerV };

struct QuantitySpec {
    Quantity kind;
    int p = 0;
};

QuantitySpec parse_quantity(const std::string& name);
std::string quantity_name(const QuantitySpec& spec);

/// Evaluates one quantity for a fixed cochain (bits over the carrier's
/// (k-1)-simplices).
long long eval_quantity(const SdCarrier& carrier, const std::vector<std::uint8_t>& bits,
                        const QuantitySpec& spec);

enum class EstimateMode { Exact, MonteCarlo };

struct ExpectationEstimate {
    Rat mean;
    EstimateMode mode = EstimateMode::Exact;
    long long samples = 0;     // Monte Carlo only
    double std_error = 0.0;    // Monte Carlo only
    std::uint64_t seed = 0;    // Monte Carlo only

    double mean_f() const { return rational_to_double(mean); }
};

inline constexpr int kDefaultEnumerationBudgetLog2 = 22;

/// Exact expectation by enumerating all cochains; refuses when
/// 2^{f_{k-1}} exceeds the enumeration budget.
ExpectationEstimate expect_exact(const SdCarrier& carrier, const QuantitySpec& spec,
                                 const BernoulliMeasure& measure,
                                 int budget_log2 = kDefaultEnumerationBudgetLog2);

/// Monte Carlo estimate; deterministic for fixed (seed, samples) regardless
/// of the worker count (counter-based per-sample RNG streams).
ExpectationEstimate expect_monte_carlo(const SdCarrier& carrier, const QuantitySpec& spec,
                                       const BernoulliMeasure& measure, long long samples,
                                       std::uint64_t seed, int threads = 1);

/// chi(K) + E_nu(chi(V_eps)) - [nu q_K(-nu) + (1-nu) q_K(nu-1)]; zero for
/// every complex and nu.
Rat euler_identity_residual(const SimplicialComplex& k, const BernoulliMeasure& measure,
                            int budget_log2 = kDefaultEnumerationBudgetLog2);

/// Monte Carlo estimate of the percolation probability: the measure of
/// cochains on Sd^m(Sd^{m_prime}(Delta_n) minus the open cell sigma) whose
/// hypersurface joins the boundary of Delta_n to the boundary of sigma.
/// sigma is the top cell of Sd^{m_prime}(Delta_n) with the given index.
ExpectationEstimate percolation_probability(int n, int m_prime, int m, int sigma_index, int k,
                                            const BernoulliMeasure& measure, long long samples,
                                            std::uint64_t seed, int threads = 1,
                                            long long budget = kDefaultTopCellBudget);

/// Counter-based per-(seed, stream, index) uniform 64-bit hash.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Exact Bernoulli(nu) from one uniform 64-bit draw (value 0 with
/// probability nu up to 2^-64).
bool bernoulli_zero(std::uint64_t u, const BernoulliMeasure& measure);

}  // namespace sdtop

#endif  // SDTOP_RANDOM_HYPERSURFACE_HPP
