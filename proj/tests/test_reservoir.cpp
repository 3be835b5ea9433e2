#include <doctest.h>

#include <cmath>

#include "catdyn/measures.hpp"
#include "catdyn/reservoir.hpp"
#include "test_helpers.hpp"

using namespace catdyn;

namespace {

ReservoirParams demo_params(double d_sq = 4.0, double c_pp = 0.4, double gamma = 1.0) {
    const double c_mm = std::sqrt(1.0 - c_pp * c_pp);
    return make_reservoir_params(d_sq / 4.0, d_sq / 4.0, gamma, c_pp, c_mm);
}

DensityMatrix4 reduced(const ReservoirParams& p, double t, Subsystem s1, Subsystem s2) {
    const WholeState16 psi = whole_state(p, t);
    return partial_trace(std::span<const cx, 16>{psi.amplitudes}, t, s1, s2);
}

} // namespace

TEST_SUITE("reservoir") {

TEST_CASE("b_norms endpoints and worked value") {
    auto [bp0, bm0] = b_norms(1.3, 1.0, 0.0);
    CHECK(bp0 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(bm0 == doctest::Approx(0.0).epsilon(1e-15));

    auto [bp_inf, bm_inf] = b_norms(40.0, 1.0, 60.0);
    CHECK(bp_inf == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(bm_inf == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    auto [bp, bm] = b_norms(1.0, 1.0, std::log(2.0));
    CHECK(bp == doctest::Approx(std::sqrt(2.0 * (1.0 + std::exp(-1.0)))).epsilon(1e-14));
    CHECK(bm == doctest::Approx(std::sqrt(2.0 * (1.0 - std::exp(-1.0)))).epsilon(1e-14));

    // B_plus in [sqrt(2), 2], B_minus in [0, sqrt(2)]
    for (double t : {0.0, 0.2, 1.0, 5.0}) {
        auto [p, m] = b_norms(0.7, 1.0, t);
        CHECK(p >= std::sqrt(2.0) - 1e-12);
        CHECK(p <= 2.0 + 1e-12);
        CHECK(m >= -1e-12);
        CHECK(m <= std::sqrt(2.0) + 1e-12);
    }
}

TEST_CASE("phi states start in the vacuum reservoir sector") {
    const ReservoirParams p = demo_params();
    const PhiPair phi = phi_states(p, Mode::A, 0.0);
    CHECK(std::abs(phi.plus[0] - cx{1.0, 0.0}) < 1e-14); // |+,0>|E+>
    CHECK(std::abs(phi.plus[3]) < 1e-14);
    CHECK(std::abs(phi.minus[2] - cx{1.0, 0.0}) < 1e-14); // |-,0>|E+>
    CHECK(std::abs(phi.minus[1]) < 1e-14);
}

TEST_CASE("phi states stay normalized and orthogonal") {
    SplitMix64 rng(77);
    for (int rep = 0; rep < 40; ++rep) {
        const double d_sq = 0.2 + 20.0 * rng.uniform01();
        const double c_pp = 0.1 + 0.8 * rng.uniform01();
        const ReservoirParams p = demo_params(d_sq, c_pp);
        const double t = 6.0 * rng.uniform01();
        for (Mode mode : {Mode::A, Mode::B}) {
            const PhiPair phi = phi_states(p, mode, t);
            double np = 0.0, nm = 0.0;
            cx dot{0.0, 0.0};
            for (int k = 0; k < 4; ++k) {
                np += std::norm(phi.plus[k]);
                nm += std::norm(phi.minus[k]);
                dot += std::conj(phi.plus[k]) * phi.minus[k];
            }
            CHECK(np == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(nm == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(dot) < 1e-13);
        }
    }
}

TEST_CASE("whole state: t=0 factorizes into the mode state and vacuum qubits") {
    const ReservoirParams p = demo_params(6.0, 0.55);
    const WholeState16 psi = whole_state(p, 0.0);
    // only components with both reservoir bits 0 survive
    for (int idx = 0; idx < 16; ++idx) {
        const int ira = (idx >> 2) & 1;
        const int irb = idx & 1;
        if (ira || irb) CHECK(std::abs(psi.amplitudes[idx]) < 1e-14);
    }
    CHECK(std::abs(psi.amplitudes[0] - cx{p.c_pp, 0.0}) < 1e-13);  // |+ E+ + E+>
    CHECK(std::abs(psi.amplitudes[10] - cx{p.c_mm, 0.0}) < 1e-13); // |- E+ - E+>
}

TEST_CASE("whole state norm is 1 over random parameters") {
    SplitMix64 rng(101);
    for (int rep = 0; rep < 100; ++rep) {
        const double d_sq = 0.2 + 20.0 * rng.uniform01();
        const double c_pp = 0.05 + 0.9 * rng.uniform01();
        const ReservoirParams p = demo_params(d_sq, c_pp);
        const WholeState16 psi = whole_state(p, 8.0 * rng.uniform01());
        CHECK(psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("complementarity: tracing the reservoirs recovers the engine state") {
    const ReservoirParams p = demo_params(4.0, 0.4);
    const CatPairState engine_state = x_family_state(x_family_of(p));
    for (int k = 0; k <= 10; ++k) {
        const double t = 0.5 * k;
        const DensityMatrix4 from_psi = reduced(p, t, Subsystem::ModeA, Subsystem::ModeB);
        const DensityMatrix4 from_engine = density_in_qubit_basis(engine_state, t);
        CHECK(frobenius_distance(from_psi.mat, from_engine.mat) < 1e-9);
    }
}

TEST_CASE("concurrences at t=0 and the equal-evolution symmetry") {
    const ReservoirParams p = demo_params(4.0, 0.4);
    const BipartiteConcurrences c0 = bipartite_concurrences(p, 0.0);
    const CatPairState engine_state = x_family_state(x_family_of(p));
    CHECK(c0.ab ==
          doctest::Approx(concurrence(density_in_qubit_basis(engine_state, 0.0)))
              .epsilon(1e-10));
    CHECK(c0.rarb == 0.0);
    CHECK(c0.ara == 0.0);
    CHECK(c0.arb == 0.0);

    for (double t : {0.3, 0.9, 1.7}) {
        const BipartiteConcurrences c = bipartite_concurrences(p, t);
        CHECK(std::abs(c.ara - c.brb) < 1e-12);
        CHECK(std::abs(c.arb - c.bra) < 1e-12);
    }
}

TEST_CASE("lambda_reservoir: zero at t=0, engine match while negative") {
    const ReservoirParams p = demo_params(4.0, 0.4);
    CHECK(std::abs(lambda_reservoir(p, 0.0)) < 1e-15);
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const double lam = lambda_reservoir(p, t);
        if (lam < -1e-10) {
            const auto res = negativity(reduced(p, t, Subsystem::ReservoirA,
                                                Subsystem::ReservoirB));
            CHECK(std::abs(lam - res.lambda_min) < 1e-9);
        }
    }
}

TEST_CASE("lambda_reservoir long-time limit reaches the initial mode value") {
    const ReservoirParams p = demo_params(4.0, 0.4);
    const XFamilyParams x = x_family_of(p);
    CHECK(lambda_reservoir(p, 50.0) == doctest::Approx(lambda_state1(x, 0.0)).epsilon(1e-10));
}

TEST_CASE("exchange identity between the mode and reservoir branches") {
    const ReservoirParams p = demo_params(5.0, 0.35);
    const XFamilyParams x = x_family_of(p);
    for (double t : {0.1, 0.4, 1.3, 2.2}) {
        // swapping e^{-G t} <-> 1 - e^{-G t} maps one branch onto the other
        const double swapped_time = -std::log(1.0 - std::exp(-t)); // e^{-t'} = 1 - e^{-t}
        CHECK(lambda_reservoir(p, t) ==
              doctest::Approx(lambda_state1(x, swapped_time)).epsilon(1e-11));
    }
}

TEST_CASE("t_birth: the simultaneity point gives ln 2 and the duality holds") {
    for (double d_sq : {0.4, 4.0, 16.0}) {
        // choose weights with |A1/A2| = e^{D^2/4}
        const double g = std::exp(d_sq / 4.0);
        const double eps = std::exp(-0.5 * d_sq);
        const double np_sq = 1.0 / (2.0 * (1.0 + eps));
        const double nm_sq = 1.0 / (2.0 * (1.0 - eps));
        const double q_over_p = (g - 1.0) / (g + 1.0);
        const double c_pp = 1.0;
        const double c_mm = q_over_p * np_sq / nm_sq;
        const ReservoirParams p =
            make_reservoir_params(d_sq / 4.0, d_sq / 4.0, 1.0, c_pp, c_mm);
        const auto tb = t_birth(p);
        const auto td = t_disentangle_1(x_family_of(p));
        REQUIRE(tb.has_value());
        REQUIRE(td.time.has_value());
        CHECK(*tb == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(*td.time == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(std::exp(-*tb) + std::exp(-*td.time) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("t_birth is a sign change of lambda_reservoir") {
    const ReservoirParams p = demo_params(16.0, 0.4);
    const auto tb = t_birth(p);
    REQUIRE(tb.has_value());
    CHECK(std::abs(lambda_reservoir(p, *tb)) < 1e-9);
    CHECK(lambda_reservoir(p, *tb + 0.05) < 0.0);
    CHECK(lambda_reservoir(p, std::max(0.0, *tb - 0.05)) > 0.0);
}

TEST_CASE("unequal distances: engine-level traces work, closed forms refuse") {
    const ReservoirParams p = make_reservoir_params(1.0, 2.25, 1.0, 0.4, 0.9165151389911680);
    CHECK(whole_state(p, 0.7).norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_NOTHROW(bipartite_concurrences(p, 0.7));
    CHECK_THROWS_AS(lambda_reservoir(p, 0.7), Error);
    CHECK_THROWS_AS(t_birth(p), Error);
}

TEST_CASE("t_birth: equal weights give birth at t=0 and an infinite death time") {
    const double r = 1.0 / std::sqrt(2.0);
    const ReservoirParams p = make_reservoir_params(1.0, 1.0, 1.0, r, r);
    const auto tb = t_birth(p);
    // |A2|/|A1| = e^{-D^2/2} exactly: the outer-log argument is 1, t_b = 0
    REQUIRE(tb.has_value());
    CHECK(std::abs(*tb) < 1e-12);
    CHECK_FALSE(t_disentangle_1(x_family_of(p)).time.has_value());
}

} // TEST_SUITE
