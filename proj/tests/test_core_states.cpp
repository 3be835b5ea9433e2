#include <doctest.h>

#include <cmath>

#include "catdyn/core_states.hpp"
#include "test_helpers.hpp"

using namespace catdyn;
using testutil::fock_series_overlap;

TEST_SUITE("core_states") {

TEST_CASE("overlap of identical states is 1") {
    const Amplitude a{0.7, -1.3};
    CHECK(std::abs(coherent_overlap(a, a) - cx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("overlap (1,-1) equals e^-2 and matches the Fock series") {
    const cx o = coherent_overlap(cx{1.0, 0.0}, cx{-1.0, 0.0});
    CHECK(o.real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(std::abs(o.imag()) < 1e-15);
    CHECK(std::abs(o - fock_series_overlap(cx{1.0, 0.0}, cx{-1.0, 0.0}, 40)) < 1e-14);
}

TEST_CASE("overlap exchange gives the complex conjugate") {
    SplitMix64 rng(11);
    for (int k = 0; k < 20; ++k) {
        const Amplitude x1{2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0};
        const Amplitude x2{2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0};
        CHECK(std::abs(coherent_overlap(x1, x2) - std::conj(coherent_overlap(x2, x1))) <
              1e-15);
    }
}

TEST_CASE("overlap modulus is exp(-|x1-x2|^2/2) for random pairs") {
    SplitMix64 rng(42);
    for (int k = 0; k < 100; ++k) {
        const Amplitude x1{4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
        const Amplitude x2{4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
        const double expected = std::exp(-0.5 * std::norm(x1 - x2));
        CHECK(std::abs(coherent_overlap(x1, x2)) ==
              doctest::Approx(expected).epsilon(1e-13));
        CHECK(std::abs(coherent_overlap(x1, x2)) <= 1.0 + 1e-15);
    }
}

TEST_CASE("overlap matches the Fock series for complex pairs") {
    SplitMix64 rng(7);
    for (int k = 0; k < 25; ++k) {
        const Amplitude x1{4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
        const Amplitude x2{4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
        CHECK(std::abs(coherent_overlap(x1, x2) - fock_series_overlap(x1, x2)) < 1e-10);
    }
}

TEST_CASE("decay_amplitude") {
    CHECK(decay_amplitude(cx{0.4, 0.9}, 1.7, 0.0) == cx{0.4, 0.9});
    CHECK(std::abs(decay_amplitude(cx{2.0, 0.0}, 1.0, 2.0 * std::log(2.0)) - cx{1.0, 0.0}) <
          1e-15);
    CHECK(decay_amplitude(cx{0.4, 0.9}, 0.0, 5.0) == cx{0.4, 0.9});
    CHECK_THROWS_AS(decay_amplitude(cx{1.0, 0.0}, 1.0, -0.1), Error);
}

TEST_CASE("ortho basis: well separated pair") {
    const OrthoBasisMap m = build_ortho_basis(cx{2.0, 0.0}, cx{-2.0, 0.0});
    CHECK(std::abs(m.overlap) == doctest::Approx(std::exp(-8.0)).epsilon(1e-13));
    CHECK(m.n_plus == doctest::Approx(1.0 / std::sqrt(2.0 * (1.0 + std::exp(-8.0)))));
    CHECK(m.n_minus == doctest::Approx(1.0 / std::sqrt(2.0 * (1.0 - std::exp(-8.0)))));
    // both normalizations close to 1/sqrt(2) (gap is e^{-8}/2^{3/2} ~ 1.2e-4)
    CHECK(std::abs(m.n_plus - 1.0 / std::sqrt(2.0)) < 1.5e-4);
    CHECK(std::abs(m.n_minus - 1.0 / std::sqrt(2.0)) < 1.5e-4);
}

TEST_CASE("ortho basis: nearly degenerate pair has a large N_minus") {
    const OrthoBasisMap m = build_ortho_basis(cx{0.1, 0.0}, cx{-0.1, 0.0});
    CHECK(m.n_minus ==
          doctest::Approx(1.0 / std::sqrt(2.0 * (1.0 - std::exp(-0.02)))).epsilon(1e-13));
}

TEST_CASE("ortho basis: identical amplitudes are rejected") {
    CHECK_THROWS_AS(build_ortho_basis(cx{0.3, 0.2}, cx{0.3, 0.2}), DegenerateSuperposition);
}

// <s|s'> for |s> = N_s (|xi1> + sigma_s p |xi2>), expanded through coherent
// overlaps only.
static cx basis_inner(const OrthoBasisMap& m, int s, int sp) {
    const double ns = s == 0 ? m.n_plus : m.n_minus;
    const double nsp = sp == 0 ? m.n_plus : m.n_minus;
    const double sg_s = s == 0 ? 1.0 : -1.0;
    const double sg_sp = sp == 0 ? 1.0 : -1.0;
    const cx p = m.phase_unit;
    const cx o21 = coherent_overlap(m.xi1, m.xi2); // <xi2|xi1>
    const cx o12 = std::conj(o21);                 // <xi1|xi2>
    return ns * nsp *
           (cx{1.0, 0.0} + sg_sp * p * o12 + sg_s * std::conj(p) * o21 +
            cx{sg_s * sg_sp, 0.0});
}

TEST_CASE("ortho basis: orthonormality through coherent overlaps") {
    SplitMix64 rng(5);
    for (int k = 0; k < 50; ++k) {
        const Amplitude x1{3.0 * rng.uniform01() - 1.5, 3.0 * rng.uniform01() - 1.5};
        const Amplitude x2{3.0 * rng.uniform01() - 1.5, 3.0 * rng.uniform01() - 1.5};
        if (std::norm(x1 - x2) < 1e-6) continue;
        const OrthoBasisMap m = build_ortho_basis(x1, x2);
        for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp) {
                const cx expected = (s == sp) ? cx{1.0, 0.0} : cx{0.0, 0.0};
                CHECK(std::abs(basis_inner(m, s, sp) - expected) < 1e-12);
            }
    }
}

TEST_CASE("ortho basis: expansion reproduces the Gram matrix") {
    SplitMix64 rng(9);
    for (int k = 0; k < 50; ++k) {
        const Amplitude x1{3.0 * rng.uniform01() - 1.5, 3.0 * rng.uniform01() - 1.5};
        const Amplitude x2{3.0 * rng.uniform01() - 1.5, 3.0 * rng.uniform01() - 1.5};
        if (std::norm(x1 - x2) < 1e-6) continue;
        const OrthoBasisMap m = build_ortho_basis(x1, x2);
        const Amplitude xs[2] = {x1, x2};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                // <xi_j|xi_i> via the orthonormal expansion
                cx rebuilt{0.0, 0.0};
                for (int s = 0; s < 2; ++s) rebuilt += std::conj(m.g(j, s)) * m.g(i, s);
                CHECK(std::abs(rebuilt - coherent_overlap(xs[i], xs[j])) < 1e-12);
            }
    }
}

TEST_CASE("distances conventions") {
    const Distances d =
        distances(cx{1.0, 0.0}, cx{-1.0, 0.0}, cx{1.0, 0.0}, cx{-1.0, 0.0});
    CHECK(d.d_alpha_sq == doctest::Approx(2.0));
    CHECK(d.d_eq_sq == doctest::Approx(4.0));
    CHECK(d.d_avg_sq == doctest::Approx(4.0));

    const Distances z = distances(cx{0.5, 0.5}, cx{0.5, 0.5}, cx{1.0, 0.0}, cx{-1.0, 0.0});
    CHECK(z.d_alpha_sq == 0.0);
    CHECK(z.d_avg_sq == doctest::Approx(2.0)); // (0 + 4)/2
    CHECK(z.d_avg_sq == doctest::Approx(z.d_alpha_sq + z.d_beta_sq));
}

} // TEST_SUITE
