// core_states.hpp — coherent-state amplitude arithmetic, overlaps, and the
// orthogonalization of a two-component superposition into an effective qubit.
#pragma once

#include <array>
#include <complex>

#include "catdyn/errors.hpp"
#include "catdyn/mat.hpp"

namespace catdyn {

// Phase-space coordinate of a coherent state.
using Amplitude = std::complex<double>;

bool is_finite(Amplitude a);

// <xi2|xi1> = exp(-|xi1|^2/2 - |xi2|^2/2 + conj(xi2)*xi1).
// Modulus is exp(-|xi1-xi2|^2/2); always <= 1.
cx coherent_overlap(Amplitude xi1, Amplitude xi2);

// xi * exp(-gamma t / 2). Rejects negative times.
Amplitude decay_amplitude(Amplitude xi, double gamma, double t);

// Orthonormal pair |+>, |-> spanning {|xi1>, |xi2>}:
//   |s> = n_s (|xi1> + s * phase_unit * |xi2>),   s = +1, -1
// together with the inverse expansion |xi_i> = sum_s g[i][s] |s>.
struct OrthoBasisMap {
    Amplitude xi1{};
    Amplitude xi2{};
    cx overlap{};       // <xi2|xi1>
    cx phase_unit{};    // overlap / |overlap| (1 when the overlap vanishes)
    double n_plus = 0.0;
    double n_minus = 0.0;
    std::array<std::array<cx, 2>, 2> expansion{}; // expansion[i][s], s: 0 = +, 1 = -

    // Coefficient of |s> in |xi_i>, i in {0,1}, s in {0,1}.
    cx g(int i, int s) const { return expansion[i][s]; }
};

// Throws DegenerateSuperposition when |xi1 - xi2|^2 < min_dist_sq.
OrthoBasisMap build_ortho_basis(Amplitude xi1, Amplitude xi2, double min_dist_sq = 1e-12);

// The squared phase-space distances in each convention used by the formulas.
// Closed forms must state which field they consume.
struct Distances {
    double d_alpha_sq = 0.0; // |a1-a2|^2 / 2
    double d_beta_sq = 0.0;  // |b1-b2|^2 / 2
    double d_avg_sq = 0.0;   // (|a1-a2|^2 + |b1-b2|^2) / 2 = d_alpha_sq + d_beta_sq
    double d_eq_sq = 0.0;    // |a1-a2|^2 (equal-distance convention)
};

Distances distances(Amplitude alpha1, Amplitude alpha2, Amplitude beta1, Amplitude beta2);

} // namespace catdyn
