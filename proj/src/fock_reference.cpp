#include "catdyn/fock_reference.hpp"

#include <cmath>

namespace catdyn::fock::reference {

CMat annihilation_a(int n_a, int n_b) {
    const int da = n_a + 1, db = n_b + 1;
    CMat a(static_cast<std::size_t>(da) * db);
    for (int na = 1; na < da; ++na)
        for (int nb = 0; nb < db; ++nb)
            a((na - 1) * db + nb, na * db + nb) = std::sqrt(static_cast<double>(na));
    return a;
}

CMat annihilation_b(int n_a, int n_b) {
    const int da = n_a + 1, db = n_b + 1;
    CMat b(static_cast<std::size_t>(da) * db);
    for (int na = 0; na < da; ++na)
        for (int nb = 1; nb < db; ++nb)
            b(na * db + (nb - 1), na * db + nb) = std::sqrt(static_cast<double>(nb));
    return b;
}

namespace {

// (g/2)(2 A rho A+ - A+A rho - rho A+A). Products are arranged so the sparse
// annihilation operator is always the left factor (CMat multiplication skips
// zero left entries): X A+ = (A X+)+ and rho N = (N rho+)+.
CMat dissipator(const CMat& op, const CMat& rho, double gamma) {
    const CMat op_dag = op.adjoint();
    const CMat num = op_dag * op;
    const CMat a_rho = op * rho;
    CMat out = (op * a_rho.adjoint()).adjoint();
    out *= cx{2.0, 0.0};
    out -= num * rho;
    out -= (num * rho.adjoint()).adjoint();
    out *= cx{0.5 * gamma, 0.0};
    return out;
}

} // namespace

CMat lindblad_rhs_dense(const CMat& rho, int n_a, int n_b, double gamma_a, double gamma_b) {
    return dissipator(annihilation_a(n_a, n_b), rho, gamma_a) +
           dissipator(annihilation_b(n_a, n_b), rho, gamma_b);
}

CMat integrate_dense(CMat rho, int n_a, int n_b, double gamma_a, double gamma_b, double t,
                     double step) {
    const long steps = std::max(1L, static_cast<long>(std::ceil(t / step - 1e-12)));
    const double h = t / static_cast<double>(steps);
    const CMat a = annihilation_a(n_a, n_b);
    const CMat b = annihilation_b(n_a, n_b);
    auto rhs = [&](const CMat& m) { return dissipator(a, m, gamma_a) + dissipator(b, m, gamma_b); };

    for (long s = 0; s < steps; ++s) {
        const CMat k1 = rhs(rho);
        const CMat k2 = rhs(rho + cx{0.5 * h, 0.0} * k1);
        const CMat k3 = rhs(rho + cx{0.5 * h, 0.0} * k2);
        const CMat k4 = rhs(rho + cx{h, 0.0} * k3);
        rho += cx{h / 6.0, 0.0} * (k1 + cx{2.0, 0.0} * k2 + cx{2.0, 0.0} * k3 + k4);
        rho.symmetrize_hermitian();
    }
    return rho;
}

} // namespace catdyn::fock::reference
