#include "catdyn/core_states.hpp"

#include <cmath>

namespace catdyn {

bool is_finite(Amplitude a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

cx coherent_overlap(Amplitude xi1, Amplitude xi2) {
    if (!is_finite(xi1) || !is_finite(xi2))
        throw Error("coherent_overlap: non-finite amplitude");
    const cx expo = -0.5 * std::norm(xi1) - 0.5 * std::norm(xi2) + std::conj(xi2) * xi1;
    return std::exp(expo);
}

Amplitude decay_amplitude(Amplitude xi, double gamma, double t) {
    if (!is_finite(xi)) throw Error("decay_amplitude: non-finite amplitude");
    if (gamma < 0.0) throw Error("decay_amplitude: negative rate");
    if (t < 0.0) throw Error("decay_amplitude: negative time");
    return xi * std::exp(-0.5 * gamma * t);
}

OrthoBasisMap build_ortho_basis(Amplitude xi1, Amplitude xi2, double min_dist_sq) {
    if (!is_finite(xi1) || !is_finite(xi2))
        throw Error("build_ortho_basis: non-finite amplitude");
    const double dist_sq = std::norm(xi1 - xi2);
    if (dist_sq < min_dist_sq)
        throw DegenerateSuperposition("build_ortho_basis: |xi1 - xi2|^2 below threshold");

    OrthoBasisMap map;
    map.xi1 = xi1;
    map.xi2 = xi2;
    map.overlap = coherent_overlap(xi1, xi2);
    const double mod = std::abs(map.overlap);
    map.phase_unit = mod > 0.0 ? map.overlap / mod : cx{1.0, 0.0};
    map.n_plus = 1.0 / std::sqrt(2.0 * (1.0 + mod));
    map.n_minus = 1.0 / std::sqrt(2.0 * (1.0 - mod));

    // |xi1> = ( |+>/N+ + |->/N- ) / 2,  |xi2> = conj(p) ( |+>/N+ - |->/N- ) / 2
    const cx pc = std::conj(map.phase_unit);
    map.expansion[0][0] = cx{1.0 / (2.0 * map.n_plus), 0.0};
    map.expansion[0][1] = cx{1.0 / (2.0 * map.n_minus), 0.0};
    map.expansion[1][0] = pc / (2.0 * map.n_plus);
    map.expansion[1][1] = -pc / (2.0 * map.n_minus);
    return map;
}

Distances distances(Amplitude alpha1, Amplitude alpha2, Amplitude beta1, Amplitude beta2) {
    Distances d;
    const double da = std::norm(alpha1 - alpha2);
    const double db = std::norm(beta1 - beta2);
    d.d_alpha_sq = 0.5 * da;
    d.d_beta_sq = 0.5 * db;
    d.d_avg_sq = 0.5 * (da + db);
    d.d_eq_sq = da;
    return d;
}

} // namespace catdyn
