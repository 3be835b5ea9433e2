// fock_reference.hpp — serial reference for the Fock-space generator: the
// master equation written literally with dense operator products. Slow
// (O(dim^3) per application) and single-threaded; used to validate the fused
// production kernel and as the benchmark baseline.
#pragma once

#include <span>
#include <vector>

#include "catdyn/mat.hpp"

namespace catdyn::fock::reference {

// Annihilation operators of the joint space, index na * dim_b + nb.
CMat annihilation_a(int n_a, int n_b);
CMat annihilation_b(int n_a, int n_b);

// (ga/2)(2 A rho A+ - A+A rho - rho A+A) + (gb/2)(2 B rho B+ - B+B rho - rho B+B)
CMat lindblad_rhs_dense(const CMat& rho, int n_a, int n_b, double gamma_a, double gamma_b);

// Textbook four-stage RK4 on the dense matrix (k1..k4 form, deliberately a
// different arrangement than the production stepper).
CMat integrate_dense(CMat rho, int n_a, int n_b, double gamma_a, double gamma_b, double t,
                     double step);

} // namespace catdyn::fock::reference
