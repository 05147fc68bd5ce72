#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sdtop/homology.hpp"
#include "sdtop/random_hypersurface.hpp"

using namespace sdtop;

namespace {

Cochain make_cochain(const SimplicialComplex& k, int deg, std::vector<std::uint8_t> bits) {
    Cochain eps;
    eps.k = deg;
    eps.bits = std::move(bits);
    REQUIRE(eps.bits.size() == static_cast<std::size_t>(k.count(deg - 1)));
    return eps;
}

int get_or_zero(const std::vector<int>& v, int i) {
    return (i >= 0 && i < static_cast<int>(v.size())) ? v[static_cast<std::size_t>(i)] : 0;
}

}  // namespace

TEST_CASE("sample_cochain degenerate measures and statistics") {
    auto k = standard_simplex(2);
    auto all_zero = sample_cochain(k, 1, BernoulliMeasure(Rat(1)), 7);
    CHECK(all_zero.bits == std::vector<std::uint8_t>{0, 0, 0});
    auto all_one = sample_cochain(k, 1, BernoulliMeasure(Rat(0)), 7);
    CHECK(all_one.bits == std::vector<std::uint8_t>{1, 1, 1});
    CHECK_THROWS_AS(sample_cochain(k, 3, BernoulliMeasure(Rat(1, 2)), 7), std::invalid_argument);

    // Empirical frequency of zeros within 3 sigma of nu = 1/2.
    long long zeros = 0, draws = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        auto eps = sample_cochain(k, 1, BernoulliMeasure(Rat(1, 2)), seed);
        for (auto b : eps.bits) {
            zeros += b == 0;
            ++draws;
        }
    }
    double mean = static_cast<double>(zeros) / static_cast<double>(draws);
    double sigma = 0.5 / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(mean - 0.5) < 3 * sigma);

    // Determinism in (seed, order).
    auto a = sample_cochain(k, 1, BernoulliMeasure(Rat(1, 3)), 42);
    auto b = sample_cochain(k, 1, BernoulliMeasure(Rat(1, 3)), 42);
    CHECK(a.bits == b.bits);
}

TEST_CASE("coboundary values") {
    auto d2 = standard_simplex(2);
    // k = 1: eps on vertices; edge with equal endpoint values has d(eps) = 0.
    auto eps_const = make_cochain(d2, 1, {1, 1, 1});
    CHECK(coboundary_value(d2, eps_const, Simplex({0, 1})) == 0);
    auto eps01 = make_cochain(d2, 1, {0, 1, 0});
    CHECK(coboundary_value(d2, eps01, Simplex({0, 1})) == 1);
    CHECK_THROWS_AS(coboundary_value(d2, eps01, Simplex({0, 1, 2})), std::invalid_argument);

    // k = 2: eps on edges; a triangle whose edges carry a single 1 is hot.
    // Edge order of Delta_2 is lex: {0,1}, {0,2}, {1,2}.
    auto eps2 = make_cochain(d2, 2, {1, 0, 0});
    CHECK(coboundary_value(d2, eps2, Simplex({0, 1, 2})) == 1);
}

TEST_CASE("build_hypersurface basic shapes") {
    auto d1 = standard_simplex(1);
    auto carrier = SdCarrier::over_complex(d1, 1);

    auto eps_const = make_cochain(d1, 1, {0, 0});
    auto v0 = build_hypersurface(carrier, eps_const);
    CHECK(v0.is_empty());
    CHECK(betti(v0).empty());

    auto eps = make_cochain(d1, 1, {0, 1});
    auto v = build_hypersurface(carrier, eps);
    CHECK(v.face_counts() == std::vector<long long>{1});
    // The single vertex is the barycenter of the edge.
    auto vc = v.as_complex();
    REQUIRE(vc.count(0) == 1);
    CHECK(carrier->sd().vertex_parent[static_cast<std::size_t>(vc.simplices(0)[0][0])] == Simplex({0, 1}));

    // Nonconstant cochain on the triangle circle: two dual vertices.
    auto circle = boundary_complex(2);
    auto epsc = make_cochain(circle, 1, {1, 0, 0});
    auto vcirc = build_hypersurface(circle, epsc);
    CHECK(vcirc.face_counts() == std::vector<long long>{2});
    CHECK(betti(vcirc) == std::vector<int>{2});
}

TEST_CASE("hypersurface betti agrees with from-scratch homology") {
    auto k = standard_simplex(3);
    auto carrier = SdCarrier::over_complex(k, 1);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto eps = sample_cochain(k, 1, BernoulliMeasure(Rat(1, 2)), seed);
        auto v = build_hypersurface(carrier, eps);
        if (v.is_empty()) continue;
        CHECK(betti(v) == betti(v.as_complex()));
    }
}

TEST_CASE("filtration levels") {
    auto d1 = standard_simplex(1);
    auto eps = make_cochain(d1, 1, {0, 1});
    auto k0 = filtration_level(d1, eps, 0);
    CHECK(k0.count(0) == 2);
    CHECK(k0.count(1) == 0);

    auto d3 = standard_simplex(3);
    auto eps_const = make_cochain(d3, 1, {0, 0, 0, 0});
    auto lvl0 = filtration_level(d3, eps_const, 0);
    CHECK(lvl0.total_count() == d3.total_count());

    auto eps2 = make_cochain(d3, 1, {0, 0, 1, 1});
    auto k1 = filtration_level(d3, eps2, 1);
    CHECK(k1.count(2) == 4);
    CHECK(k1.count(3) == 0);  // the tetrahedron has min count 2

    // Nesting K_0 in K_1 in ... = K for sampled cochains.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto e = sample_cochain(d3, 1, BernoulliMeasure(Rat(1, 2)), seed);
        SimplicialComplex prev;
        for (int i = 0; i <= 2; ++i) {
            auto ki = filtration_level(d3, e, i);
            if (i > 0) CHECK(ki.has_subcomplex(prev));
            prev = ki;
        }
        CHECK(prev.total_count() == d3.total_count());
    }
    CHECK_THROWS_AS(filtration_level(d3, eps2, 3), std::invalid_argument);
    auto epsk2 = make_cochain(d3, 2, std::vector<std::uint8_t>(6, 0));
    CHECK_THROWS_AS(filtration_level(d3, epsk2, 0), std::invalid_argument);
}

TEST_CASE("shifted relative complex equals hypersurface homology") {
    auto d1 = standard_simplex(1);
    auto eps = make_cochain(d1, 1, {0, 1});
    auto cc = shifted_relative_complex(d1, eps);
    REQUIRE(cc.sizes == std::vector<int>{1});
    CHECK(cc.betti() == std::vector<int>{1});

    auto eps_const = make_cochain(d1, 1, {1, 1});
    auto cc0 = shifted_relative_complex(d1, eps_const);
    CHECK(cc0.sizes == std::vector<int>{0});
}

TEST_CASE("Theorem 1.4 oracle equivalence on seeded cochains") {
    std::vector<SimplicialComplex> complexes{standard_simplex(2), standard_simplex(3),
                                             boundary_complex(3),
                                             subdivide(standard_simplex(2)).complex};
    for (const auto& k : complexes) {
        auto carrier = SdCarrier::over_complex(k, 1);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            auto eps = sample_cochain(k, 1, BernoulliMeasure(Rat(1, 2)), seed);
            auto v = build_hypersurface(carrier, eps);
            auto b_v = betti(v);
            auto b_shift = shifted_relative_complex(k, eps).betti();
            auto k0 = filtration_level(k, eps, 0);
            auto b_rel = relative_betti(k, k0);
            for (int p = 0; p < k.dim(); ++p) {
                CHECK(get_or_zero(b_v, p) == get_or_zero(b_shift, p));
                CHECK(get_or_zero(b_shift, p) == get_or_zero(b_rel, p + 1));
            }
            // Component count cross-check against b_0.
            if (!v.is_empty())
                CHECK(connected_components(v.as_complex()).count == betti(v)[0]);
        }
    }
}

TEST_CASE("betti_tilde on the interior-loop fixture") {
    // Carrier Sd(Delta_2); eps = 1 exactly on the barycenter vertex. All six
    // coboundary-hot edges surround the center, so V is an interior loop.
    auto carrier = SdCarrier::over_simplex(2, 1, 1);
    const auto& base = carrier->base();
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(base.count(0)), 0);
    int center = -1;
    for (int i = 0; i < base.count(0); ++i) {
        // Vertices of Sd(Delta_2) are simplices of Delta_2; the center is the
        // one whose neighbors span everything: identify via vertex id of the
        // full simplex through the registry used to build the carrier.
        (void)i;
    }
    // The base of this carrier is Sd(Delta_2) built from Delta_2; recover the
    // center through a fresh subdivision with identical ordering.
    auto sd = subdivide(standard_simplex(2));
    center = sd.vertex_of(Simplex({0, 1, 2}));
    REQUIRE(center >= 0);
    bits[static_cast<std::size_t>(base.index_of(Simplex::vertex(center)))] = 1;
    Cochain eps;
    eps.k = 1;
    eps.bits = bits;
    auto v = build_hypersurface(carrier, eps);
    CHECK(betti(v) == std::vector<int>{1, 1});
    CHECK(betti_tilde(v) == std::vector<int>{1, 1});

    // All-boundary-touching and empty cases give zero vectors.
    Cochain eps2;
    eps2.k = 1;
    eps2.bits.assign(bits.size(), 0);
    eps2.bits[0] = 1;  // vertex {0} of Delta_2: hot edges touch the boundary
    auto v2 = build_hypersurface(carrier, eps2);
    auto bt2 = betti_tilde(v2);
    for (int x : bt2) CHECK(x == 0);
    for (std::size_t p = 0; p < bt2.size(); ++p)
        CHECK(bt2[p] <= betti(v2)[p]);

    Cochain eps3;
    eps3.k = 1;
    eps3.bits.assign(bits.size(), 0);
    auto v3 = build_hypersurface(carrier, eps3);
    CHECK(betti_tilde(v3).empty());

    // Unmarked carriers reject btilde.
    auto plain = SdCarrier::over_complex(standard_simplex(2), 1);
    auto veps = build_hypersurface(plain, sample_cochain(standard_simplex(2), 1,
                                                         BernoulliMeasure(Rat(1, 2)), 3));
    CHECK_THROWS_AS(betti_tilde(veps), std::invalid_argument);
}

TEST_CASE("btilde <= b pointwise on samples") {
    auto carrier = SdCarrier::over_simplex(2, 1, 1);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto eps = sample_cochain(carrier->base(), 1, BernoulliMeasure(Rat(1, 2)), seed);
        auto v = build_hypersurface(carrier, eps);
        auto b = betti(v);
        auto bt = betti_tilde(v);
        REQUIRE(b.size() == bt.size());
        for (std::size_t p = 0; p < b.size(); ++p) CHECK(bt[p] <= b[p]);
    }
}

TEST_CASE("exact expectations from the spec's enumerations") {
    auto d1 = SdCarrier::over_complex(standard_simplex(1), 1);
    auto half = BernoulliMeasure(Rat(1, 2));
    CHECK(expect_exact(*d1, {Quantity::BettiV, 0}, half).mean == Rat(1, 2));

    auto circle = SdCarrier::over_complex(boundary_complex(2), 1);
    CHECK(expect_exact(*circle, {Quantity::BettiV, 0}, half).mean == Rat(3, 2));
    CHECK(expect_exact(*circle, {Quantity::BettiK0, 0}, half).mean == Rat(7, 4));

    // nu = 1 makes d(eps) vanish almost surely.
    CHECK(expect_exact(*circle, {Quantity::BettiV, 0}, BernoulliMeasure(Rat(1))).mean == 0);
    CHECK(expect_exact(*circle, {Quantity::BettiV, 0}, BernoulliMeasure(Rat(0))).mean == 0);

    // Budget guard.
    CHECK_THROWS_AS(expect_exact(*circle, {Quantity::BettiV, 0}, half, 2), BudgetExceeded);
}

TEST_CASE("Prop 3.4 closed form for E(f_p(K_0))") {
    for (int n : {2, 3}) {
        auto k = standard_simplex(n);
        auto carrier = SdCarrier::over_complex(k, 1);
        for (Rat nu : {Rat(1, 3), Rat(1, 2), Rat(2, 5)}) {
            BernoulliMeasure mu(nu);
            for (int p = 0; p <= n; ++p) {
                Rat want = Rat(k.count(p)) * (rat_pow(nu, static_cast<unsigned>(p + 1)) +
                                              rat_pow(1 - nu, static_cast<unsigned>(p + 1)));
                CHECK(expect_exact(*carrier, {Quantity::FaceCountK0, p}, mu).mean == want);
            }
        }
    }
}

TEST_CASE("Monte Carlo agrees with exact within 4 sigma and is thread-invariant") {
    auto circle = SdCarrier::over_complex(boundary_complex(2), 1);
    auto half = BernoulliMeasure(Rat(1, 2));
    auto mc = expect_monte_carlo(*circle, {Quantity::BettiV, 0}, half, 100000, 2024);
    double err = std::abs(mc.mean_f() - 1.5);
    CHECK(err < 4 * mc.std_error);

    auto mc4 = expect_monte_carlo(*circle, {Quantity::BettiV, 0}, half, 100000, 2024, 4);
    CHECK(mc4.mean == mc.mean);
    CHECK(mc4.std_error == doctest::Approx(mc.std_error));
}

TEST_CASE("Cor 1.5 sandwich in exact mode") {
    for (auto k : {standard_simplex(2), boundary_complex(2), boundary_complex(3), standard_simplex(3)}) {
        auto carrier = SdCarrier::over_complex(k, 1);
        auto b = betti(k);
        for (Rat nu : {Rat(1, 2), Rat(1, 3)}) {
            BernoulliMeasure mu(nu);
            for (int p = 0; p < k.dim(); ++p) {
                Rat ev = expect_exact(*carrier, {Quantity::BettiV, p}, mu).mean;
                Rat ek0 = expect_exact(*carrier, {Quantity::BettiK0, p}, mu).mean;
                CHECK(ek0 - get_or_zero(b, p) <= ev);
                CHECK(ev <= ek0 + get_or_zero(b, p + 1));
            }
        }
    }
}

TEST_CASE("Euler identity residual vanishes") {
    auto half = BernoulliMeasure(Rat(1, 2));
    CHECK(euler_identity_residual(standard_simplex(1), half) == 0);
    CHECK(euler_identity_residual(boundary_complex(2), half) == 0);
    for (auto k : {standard_simplex(2), standard_simplex(3), boundary_complex(3)})
        for (Rat nu : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(1)})
            CHECK(euler_identity_residual(k, BernoulliMeasure(nu)) == 0);
}

TEST_CASE("Thm 1.2 monotonicity of normalized btilde at d in {0,1}") {
    auto half = BernoulliMeasure(Rat(1, 2));
    auto c0 = SdCarrier::over_simplex(2, 0, 1);
    auto c1 = SdCarrier::over_simplex(2, 1, 1);
    Rat e0 = expect_exact(*c0, {Quantity::BettiTildeV, 0}, half).mean;
    Rat e1 = expect_exact(*c1, {Quantity::BettiTildeV, 0}, half).mean;
    CHECK(e0 == 0);  // every component of V touches the boundary at d = 0
    CHECK(e1 / 6 >= e0);
    CHECK(e1 > 0);
}

TEST_CASE("percolation estimator") {
    auto half = BernoulliMeasure(Rat(1, 2));
    auto p = percolation_probability(2, 1, 1, 0, 1, half, 400, 11);
    CHECK(p.mean >= 0);
    CHECK(p.mean <= 1);
    CHECK(p.samples == 400);

    // Degenerate measures never percolate (V is empty).
    CHECK(percolation_probability(2, 1, 1, 0, 1, BernoulliMeasure(Rat(1)), 50, 1).mean == 0);
    CHECK(percolation_probability(2, 1, 1, 0, 1, BernoulliMeasure(Rat(0)), 50, 1).mean == 0);

    // Thread invariance.
    auto p2 = percolation_probability(2, 1, 1, 0, 1, half, 400, 11, 3);
    CHECK(p2.mean == p.mean);

    CHECK_THROWS_AS(percolation_probability(2, 0, 1, 0, 1, half, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(percolation_probability(2, 1, 1, 99, 1, half, 10, 1), std::invalid_argument);
}

TEST_CASE("quantity names round trip") {
    for (std::string name : {"b0V", "b1V", "btilde0V", "btilde2V", "b1K0", "f2K0", "chiV"}) {
        auto spec = parse_quantity(name);
        CHECK(quantity_name(spec) == name);
    }
    CHECK_THROWS_AS(parse_quantity("nope"), std::invalid_argument);
}
