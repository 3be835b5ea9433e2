#include "catdyn/reservoir.hpp"

#include <cmath>
#include <tuple>

namespace catdyn {

ReservoirParams make_reservoir_params(double alpha_abs_sq, double beta_abs_sq, double gamma,
                                      double c_pp, double c_mm) {
    if (alpha_abs_sq <= 0.0 || beta_abs_sq <= 0.0)
        throw Error("make_reservoir_params: amplitudes must be nonzero");
    if (gamma < 0.0) throw Error("make_reservoir_params: negative rate");
    if (c_pp < 0.0 || c_mm < 0.0)
        throw Error("make_reservoir_params: weights must be non-negative");
    const double norm = std::hypot(c_pp, c_mm);
    if (!(norm > 0.0)) throw ZeroState("make_reservoir_params: both weights vanish");
    return ReservoirParams{alpha_abs_sq, beta_abs_sq, gamma, c_pp / norm, c_mm / norm};
}

std::pair<double, double> b_norms(double x_abs_sq, double gamma, double t) {
    if (t < 0.0) throw Error("b_norms: negative time");
    const double overlap = std::exp(-2.0 * x_abs_sq * (1.0 - std::exp(-gamma * t)));
    return {std::sqrt(2.0 * (1.0 + overlap)), std::sqrt(2.0 * (1.0 - overlap))};
}

namespace {

struct ModeFactors {
    double n0_plus, n0_minus; // N_{+-}(0)
    double nt_plus, nt_minus; // N_{+-}(t)
    double b_plus, b_minus;   // B_{+-}(t)
};

ModeFactors mode_factors(double x_abs_sq, double gamma, double t) {
    const double eps0 = std::exp(-2.0 * x_abs_sq);
    const double eps_t = std::exp(-2.0 * x_abs_sq * std::exp(-gamma * t));
    ModeFactors f;
    f.n0_plus = 1.0 / std::sqrt(2.0 * (1.0 + eps0));
    f.n0_minus = 1.0 / std::sqrt(2.0 * (1.0 - eps0));
    f.nt_plus = 1.0 / std::sqrt(2.0 * (1.0 + eps_t));
    f.nt_minus = 1.0 / std::sqrt(2.0 * (1.0 - eps_t));
    std::tie(f.b_plus, f.b_minus) = b_norms(x_abs_sq, gamma, t);
    return f;
}

} // namespace

PhiPair phi_states(const ReservoirParams& params, Mode mode, double t) {
    if (t < 0.0) throw Error("phi_states: negative time");
    const double x_sq = mode == Mode::A ? params.alpha_abs_sq : params.beta_abs_sq;
    const ModeFactors f = mode_factors(x_sq, params.gamma, t);

    // Coefficients N(0) B(t) / (2 N(t)); 1/(2 N_s(t)) is a multiplication, so
    // the t=0 limit (B_- = 0) is exact without special-casing.
    PhiPair out;
    out.plus[0] = f.n0_plus * f.b_plus / (2.0 * f.nt_plus);   // |+,t>|E+,t>
    out.plus[3] = f.n0_plus * f.b_minus / (2.0 * f.nt_minus); // |-,t>|E-,t>
    out.minus[1] = f.n0_minus * f.b_minus / (2.0 * f.nt_plus); // |+,t>|E-,t>
    out.minus[2] = f.n0_minus * f.b_plus / (2.0 * f.nt_minus); // |-,t>|E+,t>
    return out;
}

WholeState16 whole_state(const ReservoirParams& params, double t) {
    const PhiPair phi_a = phi_states(params, Mode::A, t);
    const PhiPair phi_b = phi_states(params, Mode::B, t);

    WholeState16 st;
    st.t = t;
    // Parenthesized so the mode-exchange symmetry of equal parameters is
    // exact in floating point (complex products commute bitwise).
    for (int ia = 0; ia < 2; ++ia)
        for (int ira = 0; ira < 2; ++ira)
            for (int ib = 0; ib < 2; ++ib)
                for (int irb = 0; irb < 2; ++irb) {
                    const int idx = 8 * ia + 4 * ira + 2 * ib + irb;
                    st.amplitudes[idx] =
                        params.c_pp * (phi_a.plus[2 * ia + ira] * phi_b.plus[2 * ib + irb]) +
                        params.c_mm *
                            (phi_a.minus[2 * ia + ira] * phi_b.minus[2 * ib + irb]);
                }
    return st;
}

double WholeState16::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

BipartiteConcurrences bipartite_concurrences(const ReservoirParams& params, double t) {
    const WholeState16 psi = whole_state(params, t);
    const std::span<const cx, 16> amp{psi.amplitudes};
    auto c_of = [&](Subsystem p, Subsystem q) {
        return concurrence(partial_trace(amp, t, p, q));
    };
    BipartiteConcurrences c;
    c.ab = c_of(Subsystem::ModeA, Subsystem::ModeB);
    c.rarb = c_of(Subsystem::ReservoirA, Subsystem::ReservoirB);
    c.ara = c_of(Subsystem::ModeA, Subsystem::ReservoirA);
    c.arb = c_of(Subsystem::ModeA, Subsystem::ReservoirB);
    c.brb = c_of(Subsystem::ModeB, Subsystem::ReservoirB);
    c.bra = c_of(Subsystem::ModeB, Subsystem::ReservoirA);
    return c;
}

XFamilyParams x_family_of(const ReservoirParams& params) {
    if (params.alpha_abs_sq != params.beta_abs_sq)
        throw Error("x_family_of: closed forms require equal distances");
    return make_x_family(params.c_pp, params.c_mm, 4.0 * params.alpha_abs_sq, params.gamma);
}

double lambda_reservoir(const ReservoirParams& params, double t) {
    if (t < 0.0) throw Error("lambda_reservoir: negative time");
    const XFamilyParams x = x_family_of(params);
    const double decay = std::exp(-params.gamma * t);
    const double bracket1 = -std::expm1(-x.d_eq_sq * (1.0 - decay));
    const double bracket2 = x.a2 * x.a2 - x.a1 * x.a1 * std::exp(-x.d_eq_sq * decay);
    return bracket1 * bracket2;
}

std::optional<double> t_birth(const ReservoirParams& params) {
    const XFamilyParams x = x_family_of(params);
    if (!(std::abs(x.a2) > 0.0))
        return std::nullopt; // lambda_reservoir < 0 for all t > 0: birth at t = 0
    const double arg = (2.0 / x.d_eq_sq) * std::log(std::abs(x.a1) / std::abs(x.a2));
    if (!(arg > 0.0 && arg <= 1.0)) return std::nullopt; // growth starts at t = 0
    return -std::log(arg) / params.gamma;
}

} // namespace catdyn
