// measures.hpp — entanglement quantifiers on 4x4 effective two-qubit states:
// partial-transpose spectrum and Wootters concurrence, plus partial traces
// from the 16-dimensional four-qubit pure state.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "catdyn/evolution.hpp"
#include "catdyn/mat.hpp"

namespace catdyn {

// ---------------------------- Hermitian eigenproblem ------------------------

struct EigenSystem {
    std::vector<double> values; // ascending
    CMat vectors;               // columns, same order
};

// Cyclic Jacobi, sized for the small matrices used here. The input is
// symmetrized internally; throws NotHermitian when the defect exceeds tol.
std::vector<double> hermitian_eigenvalues(const CMat& m, double herm_tol = 1e-10);
EigenSystem hermitian_eigensystem(const CMat& m, double herm_tol = 1e-10);

// ------------------------------- Negativity ---------------------------------

enum class Qubit { A, B };

// Transposes the indices of the chosen subsystem of a 4x4 two-qubit operator
// in the ordered basis {|++>, |+->, |-+>, |-->}.
CMat partial_transpose(const CMat& rho, Qubit subsystem);

struct NegativityResult {
    double lambda_min = 0.0; // smallest eigenvalue of rho^{T_A}; negative iff entangled
    double neg_sum = 0.0;    // sum of |negative eigenvalues|
    std::array<double, 4> eigenvalues{}; // ascending
};

NegativityResult negativity(const CMat& rho);
NegativityResult negativity(const DensityMatrix4& rho);

// ------------------------------- Concurrence --------------------------------

// Wootters concurrence. Conjugation and sigma_y x sigma_y are taken in the
// fixed ordered {|++>,|+->,|-+>,|-->} basis; the spectrum is obtained from the
// Hermitian form sqrt(rho) rho~ sqrt(rho).
double concurrence(const CMat& rho);
double concurrence(const DensityMatrix4& rho);

// ------------------------------ Partial trace -------------------------------

// Ordering of the four effective qubits in a WholeState16 amplitude vector:
// index = 8*i_a + 4*i_ra + 2*i_b + i_rb.
enum class Subsystem { ModeA = 0, ReservoirA = 1, ModeB = 2, ReservoirB = 3 };

// Reduced 4x4 density matrix over the kept ordered pair; the remaining two
// subsystems are traced out. Throws InvalidSubsystemPair for repeated labels.
DensityMatrix4 partial_trace(std::span<const cx, 16> amplitudes, double t,
                             Subsystem keep_first, Subsystem keep_second);

} // namespace catdyn
