// reservoir.hpp — four-partite pure-state dynamics of two dissipating modes
// and their reservoirs. Each reservoir enters only through the two-dimensional
// span of its collective-excitation states, so the whole system is four
// effective qubits at every time.
#pragma once

#include <array>
#include <optional>
#include <utility>

#include "catdyn/closed_forms.hpp"
#include "catdyn/measures.hpp"

namespace catdyn {

// Symmetric cat pair (alpha2 = -alpha1) with weights on |++> / |--> and its
// reservoirs initially in vacuum. d_eq_sq = 4 |alpha|^2.
struct ReservoirParams {
    double alpha_abs_sq = 0.0; // |alpha|^2, mode a
    double beta_abs_sq = 0.0;  // |beta|^2, mode b
    double gamma = 0.0;
    double c_pp = 0.0;
    double c_mm = 0.0;
};

// Normalizes the weights (the t=0 basis is orthonormal) and validates.
ReservoirParams make_reservoir_params(double alpha_abs_sq, double beta_abs_sq, double gamma,
                                      double c_pp, double c_mm);

// Collective reservoir normalizations
//   B_{+-}(t) = sqrt(2 (1 +- e^{-2|x|^2 (1 - e^{-gamma t})}));
// B_minus(0) = 0: the odd reservoir state is undefined at t = 0 but every
// coefficient multiplying it vanishes there too.
std::pair<double, double> b_norms(double x_abs_sq, double gamma, double t);

enum class Mode { A, B };

// Joint states of one mode and its reservoir reached from |+,0>|vac> and
// |-,0>|vac>, expanded over {|+,t>,|-,t>} x {|E+,t>,|E-,t>}; component index
// 2*mode_bit + reservoir_bit. Both are unit vectors and stay orthogonal.
struct PhiPair {
    std::array<cx, 4> plus{};
    std::array<cx, 4> minus{};
};

PhiPair phi_states(const ReservoirParams& params, Mode mode, double t);

// Pure state of the full (mode a, reservoir a, mode b, reservoir b) system,
// ordered as in measures::Subsystem.
struct WholeState16 {
    double t = 0.0;
    std::array<cx, 16> amplitudes{};

    double norm_sq() const;
};

WholeState16 whole_state(const ReservoirParams& params, double t);

// Concurrence of every bipartite pair of the four qubits.
struct BipartiteConcurrences {
    double ab = 0.0;   // mode a -- mode b
    double rarb = 0.0; // reservoir a -- reservoir b
    double ara = 0.0;  // mode a -- its reservoir
    double arb = 0.0;  // mode a -- the other reservoir
    double brb = 0.0;  // mode b -- its reservoir
    double bra = 0.0;  // mode b -- the other reservoir
};

BipartiteConcurrences bipartite_concurrences(const ReservoirParams& params, double t);

// lambda_-(t) = [1 - e^{-D^2 (1-e^{-G t})}] [A2^2 - A1^2 e^{-D^2 e^{-G t}}]:
// the reservoir-reservoir partial-transpose eigenvalue, related to
// lambda_state1 by exchanging e^{-G t} and 1 - e^{-G t}. Requires equal
// distances (alpha_abs_sq == beta_abs_sq).
double lambda_reservoir(const ReservoirParams& params, double t);

// Birth time of reservoir-reservoir entanglement,
//   t_b = -(1/G) ln( (2/D^2) ln(|A1|/|A2|) ).
// Empty when the entanglement starts growing at t = 0 (argument outside (0,1]).
std::optional<double> t_birth(const ReservoirParams& params);

// The X-family view of the mode-mode subsystem (shared A1/A2 definitions).
XFamilyParams x_family_of(const ReservoirParams& params);

} // namespace catdyn
