#include "catdyn/evolution.hpp"

#include <cmath>
#include <limits>

namespace catdyn {

namespace {

// Damping factor for the coherence |xi_i(t)><xi_j(t)| of one mode:
//   exp{ -(1 - e^{-gamma t}) (|xi_i - xi_j|^2 + 2i Im(conj(xi_i) xi_j)) / 2 }.
// The sign of the imaginary part is fixed by trace preservation of the
// damping generator (the factor times the decayed overlap must stay constant).
cx damping_factor(Amplitude xi_i, Amplitude xi_j, double depletion) {
    const double dist_sq = std::norm(xi_i - xi_j);
    const double phase = 2.0 * (std::conj(xi_i) * xi_j).imag();
    return std::exp(-0.5 * depletion * cx{dist_sq, phase});
}

} // namespace

Distances distances(const CatPairState& state) {
    return distances(state.alpha1, state.alpha2, state.beta1, state.beta2);
}

double gram_norm_sq(const CatPairState& state) {
    const Amplitude as[2] = {state.alpha1, state.alpha2};
    const Amplitude bs[2] = {state.beta1, state.beta2};
    cx norm{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n)
                    norm += state.c[i][m] * std::conj(state.c[j][n]) *
                            coherent_overlap(as[i], as[j]) * coherent_overlap(bs[m], bs[n]);
    return norm.real();
}

CatPairState normalize_initial(const CatPairState& state) {
    const double norm_sq = gram_norm_sq(state);
    if (!(norm_sq > 0.0))
        throw ZeroState("normalize_initial: vanishing state norm");
    CatPairState out = state;
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& row : out.c)
        for (auto& w : row) w *= scale;
    return out;
}

CoefficientTensor evolve_coefficients(const CatPairState& state, double t) {
    if (t < 0.0) throw Error("evolve_coefficients: negative time");
    CoefficientTensor out;
    out.t = t;
    out.gamma_a = state.gamma_a;
    out.gamma_b = state.gamma_b;
    out.alpha1_t = decay_amplitude(state.alpha1, state.gamma_a, t);
    out.alpha2_t = decay_amplitude(state.alpha2, state.gamma_a, t);
    out.beta1_t = decay_amplitude(state.beta1, state.gamma_b, t);
    out.beta2_t = decay_amplitude(state.beta2, state.gamma_b, t);

    const double dep_a = -std::expm1(-state.gamma_a * t); // 1 - e^{-gamma_a t}
    const double dep_b = -std::expm1(-state.gamma_b * t);
    const Amplitude as[2] = {state.alpha1, state.alpha2};
    const Amplitude bs[2] = {state.beta1, state.beta2};

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const cx fa = damping_factor(as[i], as[j], dep_a);
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n)
                    out.at(i, j, m, n) = state.c[i][m] * std::conj(state.c[j][n]) * fa *
                                         damping_factor(bs[m], bs[n], dep_b);
        }
    return out;
}

CoefficientTensor evolve_coefficients(const CoefficientTensor& tensor, double dt) {
    if (dt < 0.0) throw Error("evolve_coefficients: negative time");
    CoefficientTensor out = tensor;
    out.t = tensor.t + dt;
    out.alpha1_t = decay_amplitude(tensor.alpha1_t, tensor.gamma_a, dt);
    out.alpha2_t = decay_amplitude(tensor.alpha2_t, tensor.gamma_a, dt);
    out.beta1_t = decay_amplitude(tensor.beta1_t, tensor.gamma_b, dt);
    out.beta2_t = decay_amplitude(tensor.beta2_t, tensor.gamma_b, dt);

    const double dep_a = -std::expm1(-tensor.gamma_a * dt);
    const double dep_b = -std::expm1(-tensor.gamma_b * dt);
    const Amplitude as[2] = {tensor.alpha1_t, tensor.alpha2_t};
    const Amplitude bs[2] = {tensor.beta1_t, tensor.beta2_t};

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const cx fa = damping_factor(as[i], as[j], dep_a);
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n)
                    out.at(i, j, m, n) = tensor.at(i, j, m, n) * fa *
                                         damping_factor(bs[m], bs[n], dep_b);
        }
    return out;
}

double gram_trace(const CoefficientTensor& tensor) {
    const Amplitude as[2] = {tensor.alpha1_t, tensor.alpha2_t};
    const Amplitude bs[2] = {tensor.beta1_t, tensor.beta2_t};
    cx tr{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
                for (int n = 0; n < 2; ++n)
                    tr += tensor.at(i, j, m, n) * coherent_overlap(as[i], as[j]) *
                          coherent_overlap(bs[m], bs[n]);
    return tr.real();
}

DensityMatrix4 make_density_matrix4(CMat mat, double t,
                                    std::optional<OrthoBasisMap> basis_a,
                                    std::optional<OrthoBasisMap> basis_b, double tol) {
    if (mat.dim() != 4) throw InvalidDensityMatrix("make_density_matrix4: dimension != 4");
    if (mat.hermiticity_defect() > tol)
        throw InvalidDensityMatrix("make_density_matrix4: not Hermitian");
    if (std::abs(mat.trace() - cx{1.0, 0.0}) > tol)
        throw InvalidDensityMatrix("make_density_matrix4: trace != 1");
    mat.symmetrize_hermitian();
    return DensityMatrix4{std::move(mat), t, std::move(basis_a), std::move(basis_b)};
}

DensityMatrix4 density_in_qubit_basis(const CoefficientTensor& tensor, double min_dist_sq) {
    const OrthoBasisMap basis_a = build_ortho_basis(tensor.alpha1_t, tensor.alpha2_t, min_dist_sq);
    const OrthoBasisMap basis_b = build_ortho_basis(tensor.beta1_t, tensor.beta2_t, min_dist_sq);

    // rho_{(s,u),(s',u')} = sum C_{i,j}^{m,n} ga[i][s] gb[m][u]
    //                                        conj(ga[j][s']) conj(gb[n][u'])
    CMat rho(4);
    for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u)
            for (int sp = 0; sp < 2; ++sp)
                for (int up = 0; up < 2; ++up) {
                    cx v{0.0, 0.0};
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            const cx wa = basis_a.g(i, s) * std::conj(basis_a.g(j, sp));
                            for (int m = 0; m < 2; ++m)
                                for (int n = 0; n < 2; ++n)
                                    v += tensor.at(i, j, m, n) * wa * basis_b.g(m, u) *
                                         std::conj(basis_b.g(n, up));
                        }
                    rho(2 * s + u, 2 * sp + up) = v;
                }
    return make_density_matrix4(std::move(rho), tensor.t, basis_a, basis_b);
}

DensityMatrix4 density_in_qubit_basis(const CatPairState& state, double t, double min_dist_sq) {
    return density_in_qubit_basis(evolve_coefficients(state, t), min_dist_sq);
}

double purity(const DensityMatrix4& rho) {
    double p = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            p += (rho.mat(r, c) * rho.mat(c, r)).real();
    return p;
}

CharacteristicTimes characteristic_times(const CatPairState& state) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double rate_a = 0.5 * state.gamma_a * std::norm(state.alpha1 - state.alpha2);
    const double rate_b = 0.5 * state.gamma_b * std::norm(state.beta1 - state.beta2);
    CharacteristicTimes ct;
    ct.tau_a = rate_a > 0.0 ? 1.0 / rate_a : inf;
    ct.tau_b = rate_b > 0.0 ? 1.0 / rate_b : inf;
    ct.tau = (rate_a + rate_b) > 0.0 ? 1.0 / (rate_a + rate_b) : inf;
    return ct;
}

} // namespace catdyn
