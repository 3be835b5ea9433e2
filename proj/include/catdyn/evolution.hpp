// evolution.hpp — exact analytic solution of the two-mode amplitude-damping
// master equation for superpositions of two coherent components per mode:
// the time-dependent coefficient tensor and its projection onto the
// orthonormal effective-qubit basis.
#pragma once

#include <array>
#include <optional>

#include "catdyn/core_states.hpp"
#include "catdyn/mat.hpp"

namespace catdyn {

// Initial condition: |Psi> = sum_{i,k} c[i][k] |alpha_i>|beta_k> with
// independent decay rates for the two modes.
struct CatPairState {
    Amplitude alpha1{}, alpha2{};
    Amplitude beta1{}, beta2{};
    std::array<std::array<cx, 2>, 2> c{}; // c[i][k], i: alpha index, k: beta index
    double gamma_a = 0.0;
    double gamma_b = 0.0;
};

Distances distances(const CatPairState& state);

// Gram norm <Psi|Psi> of the (generally nonorthogonal) superposition.
double gram_norm_sq(const CatPairState& state);

// Rescales the weight table so the Gram norm is 1. Throws ZeroState when all
// weights vanish.
CatPairState normalize_initial(const CatPairState& state);

// C_{i,j}^{m,n}(t) plus the decayed amplitudes: the full description of
// rho(t) in terms of |alpha_i(t) beta_m(t)><alpha_j(t) beta_n(t)|.
struct CoefficientTensor {
    double t = 0.0;
    std::array<cx, 16> coeffs{}; // index ((i*2+j)*2+m)*2+n
    Amplitude alpha1_t{}, alpha2_t{};
    Amplitude beta1_t{}, beta2_t{};
    double gamma_a = 0.0;
    double gamma_b = 0.0;

    cx at(int i, int j, int m, int n) const { return coeffs[((i * 2 + j) * 2 + m) * 2 + n]; }
    cx& at(int i, int j, int m, int n) { return coeffs[((i * 2 + j) * 2 + m) * 2 + n]; }
};

CoefficientTensor evolve_coefficients(const CatPairState& state, double t);

// Evolves an already-damped tensor further by dt (semigroup composition).
CoefficientTensor evolve_coefficients(const CoefficientTensor& tensor, double dt);

// Trace computed through the Gram matrix of the (decayed) coherent
// components; 1 for a normalized state at every t.
double gram_trace(const CoefficientTensor& tensor);

// Hermitian unit-trace 4x4 operator in the ordered product basis
// {|++>, |+->, |-+>, |-->} of the time-t effective qubits. The basis maps are
// kept so the matrix can be re-embedded into Fock space.
struct DensityMatrix4 {
    CMat mat;       // 4x4
    double t = 0.0;
    std::optional<OrthoBasisMap> basis_a;
    std::optional<OrthoBasisMap> basis_b;
};

// Validates Hermiticity and unit trace to tol; throws InvalidDensityMatrix.
DensityMatrix4 make_density_matrix4(CMat mat, double t,
                                    std::optional<OrthoBasisMap> basis_a = std::nullopt,
                                    std::optional<OrthoBasisMap> basis_b = std::nullopt,
                                    double tol = 1e-12);

DensityMatrix4 density_in_qubit_basis(const CatPairState& state, double t,
                                      double min_dist_sq = 1e-12);

// Same projection, starting from an evolved tensor.
DensityMatrix4 density_in_qubit_basis(const CoefficientTensor& tensor,
                                      double min_dist_sq = 1e-12);

double purity(const DensityMatrix4& rho);

// Coherence-decay time scales. Infinite when the corresponding distance (or
// rate) vanishes; 1/tau = 1/tau_a + 1/tau_b.
struct CharacteristicTimes {
    double tau_a = 0.0;
    double tau_b = 0.0;
    double tau = 0.0;
};

CharacteristicTimes characteristic_times(const CatPairState& state);

} // namespace catdyn
