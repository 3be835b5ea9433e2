// closed_forms.hpp — analytic negativities, disentanglement times, and
// finite-death conditions for the two special state families with equal
// per-mode distances and equal decay rates. Each formula is cross-checkable
// against the general engine (see tests).
#pragma once

#include <optional>
#include <utility>

#include "catdyn/evolution.hpp"

namespace catdyn {

// Weights and derived constants of the |++>/|--> family:
//   |Psi> = c_pp |+,0>_a |+,0>_b + c_mm |-,0>_a |-,0>_b,
// equal distances D^2 = |alpha1-alpha2|^2 = |beta1-beta2|^2, equal rates.
struct XFamilyParams {
    double c_pp = 0.0;    // weight of |++>, non-negative
    double c_mm = 0.0;    // weight of |-->, non-negative
    double d_eq_sq = 0.0; // D^2, equal-distance convention
    double gamma = 0.0;
    double a1 = 0.0; // c_pp N_a+(0) N_b+(0) + c_mm N_a-(0) N_b-(0)
    double a2 = 0.0; // c_pp N_a+(0) N_b+(0) - c_mm N_a-(0) N_b-(0)
    double f = 0.0;  // (1 - e^{-D^2/2}) / (1 + e^{-D^2/2})
};

// Normalizes the weights (c_pp^2 + c_mm^2 = 1) and fills the derived fields.
// Weights must be non-negative; sign freedom is a local phase.
XFamilyParams make_x_family(double c_pp, double c_mm, double d_eq_sq, double gamma);

// A1, A2 from the t=0 normalizations with |<2|1>| = e^{-d_eq_sq/2} per mode.
std::pair<double, double> a_coefficients(double c_pp, double c_mm, double d_eq_sq);

// Negativity of the equal-weight four-component state, valid as an
// approximation for d^2 >> 1 (callers should treat d^2 < 4 as qualitative).
// Distances are the halved per-mode squares d^2 = |xi1-xi2|^2 / 2.
double negativity_equal_weight(double d_alpha_sq, double d_beta_sq, double gamma_a,
                               double gamma_b, double t);

// lambda_-(t) = [1 - e^{-D^2 e^{-G t}}] [A2^2 - A1^2 e^{-D^2 (1 - e^{-G t})}].
// Exact for the X family; negative while the modes are entangled.
double lambda_state1(const XFamilyParams& params, double t);

enum class DeathClass {
    MinusDominant, // c_mm/f > c_pp: finite death iff c_mm > c_pp
    PlusDominant,  // c_pp > c_mm/f: finite death iff c_mm < c_pp f^2
    Boundary       // c_mm == c_pp f: A2 = 0, always asymptotic
};

struct DisentangleTime {
    std::optional<double> time; // empty: asymptotic decay, no finite death
    DeathClass branch = DeathClass::Boundary;
};

// Finite death time of the X family when exp(-D^2/2) < |A2|/|A1|.
DisentangleTime t_disentangle_1(const XFamilyParams& params);

// Small-distance approximation lambda_- ~= c_mm^2 e^{-G t} [1 - c_pp/c_mm - e^{-G t}]
// (D^2 << 1, caller-asserted). Companion death time below.
double lambda_small_d(double c_pp, double c_mm, double gamma, double t);
std::optional<double> t_death_small_d(double c_pp, double c_mm, double gamma);

// Death time of the cross family
//   |Phi> = c_pm |+,0>_a |-,0>_b + c_mp |-,0>_a |+,0>_b  (real weights):
// finite when exp(-D^2/2) < |c_pm - c_mp| / |c_pm + c_mp|. Signs are removed
// through a local phase, so the magnitudes of the weights decide.
std::optional<double> t_disentangle_2(double c_pm, double c_mp, double d_eq_sq, double gamma);

// ---------------------- coherent-level state factories -----------------------

// The X family as a CatPairState with real symmetric amplitudes
// alpha1 = -alpha2 = beta1 = -beta2 = sqrt(d_eq_sq)/2.
CatPairState x_family_state(const XFamilyParams& params);

// The cross family, same amplitude placement.
CatPairState phi_family_state(double c_pm, double c_mp, double d_eq_sq, double gamma);

// The equal-weight four-component state (weights {1,1,1,-1}/2 before Gram
// normalization) with per-mode halved square distances d_alpha_sq, d_beta_sq.
CatPairState equal_weight_state(double d_alpha_sq, double d_beta_sq, double gamma_a,
                                double gamma_b);

} // namespace catdyn
