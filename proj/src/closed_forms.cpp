#include "catdyn/closed_forms.hpp"

#include <cmath>
#include <tuple>

namespace catdyn {

std::pair<double, double> a_coefficients(double c_pp, double c_mm, double d_eq_sq) {
    const double eps = std::exp(-0.5 * d_eq_sq); // per-mode overlap at t = 0
    const double np_sq = 1.0 / (2.0 * (1.0 + eps));
    const double nm_sq = 1.0 / (2.0 * (1.0 - eps));
    return {c_pp * np_sq + c_mm * nm_sq, c_pp * np_sq - c_mm * nm_sq};
}

XFamilyParams make_x_family(double c_pp, double c_mm, double d_eq_sq, double gamma) {
    if (c_pp < 0.0 || c_mm < 0.0)
        throw Error("make_x_family: weights must be non-negative (signs are a local phase)");
    if (d_eq_sq <= 0.0) throw Error("make_x_family: D^2 must be positive");
    if (gamma < 0.0) throw Error("make_x_family: negative rate");
    const double norm = std::hypot(c_pp, c_mm);
    if (!(norm > 0.0)) throw ZeroState("make_x_family: both weights vanish");

    XFamilyParams p;
    p.c_pp = c_pp / norm;
    p.c_mm = c_mm / norm;
    p.d_eq_sq = d_eq_sq;
    p.gamma = gamma;
    std::tie(p.a1, p.a2) = a_coefficients(p.c_pp, p.c_mm, d_eq_sq);
    const double eps = std::exp(-0.5 * d_eq_sq);
    p.f = (1.0 - eps) / (1.0 + eps);
    return p;
}

double negativity_equal_weight(double d_alpha_sq, double d_beta_sq, double gamma_a,
                               double gamma_b, double t) {
    if (t < 0.0) throw Error("negativity_equal_weight: negative time");
    const double xa = std::exp((std::exp(-gamma_a * t) - 1.0) * d_alpha_sq);
    const double xb = std::exp((std::exp(-gamma_b * t) - 1.0) * d_beta_sq);
    return 0.25 * (1.0 - xa - xb - xa * xb);
}

double lambda_state1(const XFamilyParams& params, double t) {
    if (t < 0.0) throw Error("lambda_state1: negative time");
    const double decay = std::exp(-params.gamma * t);
    const double bracket1 = -std::expm1(-params.d_eq_sq * decay);
    const double bracket2 =
        params.a2 * params.a2 -
        params.a1 * params.a1 * std::exp(-params.d_eq_sq * (1.0 - decay));
    return bracket1 * bracket2;
}

DisentangleTime t_disentangle_1(const XFamilyParams& params) {
    DisentangleTime out;
    const double cf = params.c_mm - params.c_pp * params.f;
    if (cf > 0.0)
        out.branch = DeathClass::MinusDominant;
    else if (cf < 0.0)
        out.branch = DeathClass::PlusDominant;
    else
        out.branch = DeathClass::Boundary;

    const double abs_a1 = std::abs(params.a1);
    const double abs_a2 = std::abs(params.a2);
    if (!(abs_a1 > 0.0)) throw Error("t_disentangle_1: A1 vanishes");
    const double ratio = abs_a2 / abs_a1;
    if (!(std::exp(-0.5 * params.d_eq_sq) < ratio)) return out; // asymptotic decay

    const double inner = 1.0 + (2.0 / params.d_eq_sq) * std::log(ratio);
    // Exactly on the threshold (equal weights) rounding can leave a sliver of
    // positive `inner`; below e^{-G t} ~ 1e-9 the death time is past anything
    // distinguishable from asymptotic decay in double precision.
    if (!(inner > 1e-9)) return out;
    out.time = -std::log(inner) / params.gamma;
    return out;
}

double lambda_small_d(double c_pp, double c_mm, double gamma, double t) {
    if (c_mm == 0.0) throw Error("lambda_small_d: c_mm must be nonzero");
    const double decay = std::exp(-gamma * t);
    return c_mm * c_mm * decay * (1.0 - c_pp / c_mm - decay);
}

std::optional<double> t_death_small_d(double c_pp, double c_mm, double gamma) {
    if (!(c_mm > c_pp)) return std::nullopt;
    return -std::log(1.0 - c_pp / c_mm) / gamma;
}

std::optional<double> t_disentangle_2(double c_pm, double c_mp, double d_eq_sq, double gamma) {
    const double sum = std::abs(c_pm) + std::abs(c_mp);
    if (!(sum > 0.0)) throw ZeroState("t_disentangle_2: both weights vanish");
    // Weight signs are removable by a local phase flip of one basis vector,
    // so only the magnitudes enter the death condition.
    const double ratio = std::abs(std::abs(c_pm) - std::abs(c_mp)) / sum;
    if (!(std::exp(-0.5 * d_eq_sq) < ratio)) return std::nullopt;
    const double inner = 1.0 + (2.0 / d_eq_sq) * std::log(ratio);
    if (!(inner > 1e-9)) return std::nullopt; // threshold noise, see t_disentangle_1
    return -std::log(inner) / gamma;
}

namespace {

CatPairState coherent_family(double w_plus_plus, double w_plus_minus, double w_minus_plus,
                             double w_minus_minus, double d_eq_sq, double gamma) {
    // |+,0> = N+(0)(|a>+|-a>), |-,0> = N-(0)(|a>-|-a>) with a = sqrt(D^2)/2;
    // expand the +/- weights into the four coherent products.
    const double a = 0.5 * std::sqrt(d_eq_sq);
    const double eps = std::exp(-0.5 * d_eq_sq);
    const double np = 1.0 / std::sqrt(2.0 * (1.0 + eps));
    const double nm = 1.0 / std::sqrt(2.0 * (1.0 - eps));

    // weight of |s>_a |u>_b contributes n_s n_u (sign_s)^i (sign_u)^k to c[i][k]
    CatPairState st;
    st.alpha1 = Amplitude{a, 0.0};
    st.alpha2 = Amplitude{-a, 0.0};
    st.beta1 = Amplitude{a, 0.0};
    st.beta2 = Amplitude{-a, 0.0};
    st.gamma_a = gamma;
    st.gamma_b = gamma;

    const double w[2][2] = {{w_plus_plus, w_plus_minus}, {w_minus_plus, w_minus_minus}};
    const double n[2] = {np, nm};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            double v = 0.0;
            for (int s = 0; s < 2; ++s)
                for (int u = 0; u < 2; ++u) {
                    const double sign = ((s == 1 && i == 1) ? -1.0 : 1.0) *
                                        ((u == 1 && k == 1) ? -1.0 : 1.0);
                    v += w[s][u] * n[s] * n[u] * sign;
                }
            st.c[i][k] = cx{v, 0.0};
        }
    return normalize_initial(st);
}

} // namespace

CatPairState x_family_state(const XFamilyParams& params) {
    return coherent_family(params.c_pp, 0.0, 0.0, params.c_mm, params.d_eq_sq, params.gamma);
}

CatPairState phi_family_state(double c_pm, double c_mp, double d_eq_sq, double gamma) {
    const double norm = std::hypot(c_pm, c_mp);
    if (!(norm > 0.0)) throw ZeroState("phi_family_state: both weights vanish");
    return coherent_family(0.0, c_pm / norm, c_mp / norm, 0.0, d_eq_sq, gamma);
}

CatPairState equal_weight_state(double d_alpha_sq, double d_beta_sq, double gamma_a,
                                double gamma_b) {
    CatPairState st;
    const double a = 0.5 * std::sqrt(2.0 * d_alpha_sq); // |alpha1 - alpha2|^2 = 2 d_alpha_sq
    const double b = 0.5 * std::sqrt(2.0 * d_beta_sq);
    st.alpha1 = Amplitude{a, 0.0};
    st.alpha2 = Amplitude{-a, 0.0};
    st.beta1 = Amplitude{b, 0.0};
    st.beta2 = Amplitude{-b, 0.0};
    st.gamma_a = gamma_a;
    st.gamma_b = gamma_b;
    st.c[0][0] = cx{0.5, 0.0};
    st.c[0][1] = cx{0.5, 0.0};
    st.c[1][0] = cx{0.5, 0.0};
    st.c[1][1] = cx{-0.5, 0.0};
    return normalize_initial(st);
}

} // namespace catdyn
