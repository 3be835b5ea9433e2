// fock.hpp — independent brute-force validation path: the two-mode
// amplitude-damping master equation integrated in a truncated Fock basis.
//
// Storage layout: the joint index is r = na * (n_b + 2) + nb with one ghost
// level per mode, so the shifted reads of the damping generator never branch
// (ghost entries are zero and never written). Only the upper triangle is
// evolved; the generator closes on it and Hermiticity is enforced by
// representation. The stage kernel is OpenMP-parallel over rows; a dense
// operator-product reference (fock_reference.hpp) is kept for testing.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "catdyn/evolution.hpp"
#include "catdyn/mat.hpp"

namespace catdyn::fock {

struct FockSpace {
    int n_a = 0; // photon-number cutoff, mode a
    int n_b = 0;

    int dim_a() const { return n_a + 1; }
    int dim_b() const { return n_b + 1; }
    int pad_b() const { return n_b + 2; }
    int joint_dim() const { return dim_a() * dim_b(); }          // physical dim
    int pad_dim() const { return (n_a + 2) * (n_b + 2); }        // stored dim
    int flat(int na, int nb) const { return na * pad_b() + nb; } // row index
};

// Smallest cutoff whose coherent tail is below 1e-10 for the given amplitude
// modulus, plus 5 guard levels.
int choose_cutoff(double max_abs_amplitude);

// e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..cutoff. Throws CutoffTooSmall when
// the truncated tail weight reaches 1e-10; the tail is reported if asked.
std::vector<cx> coherent_fock_vector(Amplitude alpha, int cutoff, double* tail_out = nullptr);

// Hermitian density operator in the padded layout; entries below the diagonal
// are implicit (conjugates). trace_deficit records the truncation loss of the
// initial pure state before it was renormalized.
struct FockDensity {
    FockSpace space;
    std::vector<cx> mat; // pad_dim x pad_dim, row-major, upper triangle live
    double trace_deficit = 0.0;

    cx& at(int r, int c) { return mat[static_cast<std::size_t>(r) * space.pad_dim() + c]; }
    const cx& at(int r, int c) const {
        return mat[static_cast<std::size_t>(r) * space.pad_dim() + c];
    }
};

// |Psi><Psi| of the cat-pair initial state, renormalized after truncation.
FockDensity initial_density(const CatPairState& state, const FockSpace& space);

double trace(const FockDensity& rho);

// Mean photon number of each mode.
std::pair<double, double> mean_photon_numbers(const FockDensity& rho);

// Full dense matrix over the physical joint dimension (mirror of the stored
// upper triangle). Row/col index na * dim_b + nb.
CMat to_cmat(const FockDensity& rho);
FockDensity from_cmat(const CMat& m, const FockSpace& space);

// One application of the amplitude-damping generator
//   L(rho) = (ga/2)(2 a rho a+ - a+a rho - rho a+a) + (gb/2)(... b ...).
FockDensity lindblad_rhs(const FockDensity& rho, double gamma_a, double gamma_b);

// Stability bound for the fixed-step classical RK4: 0.01 / max(ga n_a, gb n_b).
double max_stable_step(const FockSpace& space, double gamma_a, double gamma_b);

// Advances rho in place by (t_to - t_from) using N = ceil(dt/step) equal RK4
// steps. Throws StepTooLarge when the requested step exceeds the bound.
void integrate(FockDensity& rho, double gamma_a, double gamma_b, double t_from, double t_to,
               double step);

// Snapshots of the trajectory at the (ascending, from 0) grid times.
std::vector<FockDensity> integrate_grid(FockDensity rho0, double gamma_a, double gamma_b,
                                        std::span<const double> t_grid, double step);

// Runs the grid at step and step/2 and returns the largest Frobenius
// difference between snapshots; throws StepTooLarge above the threshold.
double step_halving_check(const FockDensity& rho0, double gamma_a, double gamma_b,
                          std::span<const double> t_grid, double step,
                          double threshold = 1e-10);

// Projection of the integrated density onto the span of the four decayed
// coherent products, expressed in the orthonormal product basis of the two
// OrthoBasisMap values (built from the decayed amplitudes at the matching
// time). The projected 4x4 is renormalized to unit trace; the trace lost to
// the complement is reported as leakage and must stay below max_leakage.
struct Projection {
    DensityMatrix4 rho4;
    double leakage = 0.0;
};

Projection project_to_qubit_basis(const FockDensity& rho, const OrthoBasisMap& basis_a,
                                  const OrthoBasisMap& basis_b, double max_leakage = 1e-8);

} // namespace catdyn::fock
