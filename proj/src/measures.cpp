#include "catdyn/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace catdyn {

namespace {

double off_diagonal_norm(const CMat& a) {
    const std::size_t n = a.dim();
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * std::norm(a(p, q));
    return std::sqrt(s);
}

} // namespace

EigenSystem hermitian_eigensystem(const CMat& m, double herm_tol) {
    const std::size_t n = m.dim();
    if (n == 0) throw Error("hermitian_eigensystem: empty matrix");
    if (m.hermiticity_defect() > herm_tol)
        throw NotHermitian("hermitian_eigensystem: input not Hermitian within tolerance");

    CMat a = m;
    a.symmetrize_hermitian();
    CMat v = CMat::identity(n);

    const double scale = std::max(frobenius_norm(a), 1e-300);
    const double target = 1e-15 * scale;
    constexpr int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx apq = a(p, q);
                const double mod = std::abs(apq);
                if (mod <= 1e-300) continue;

                // Unitary on span{p,q}: phase to make the coupling real, then
                // a classical Jacobi rotation annihilating it.
                const cx phase = apq / mod; // e^{i arg(apq)}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mod);
                const double tan_theta =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tan_theta * tan_theta);
                const double s = tan_theta * c;

                // Column transform V(p,p)=c, V(p,q)=s, V(q,p)=-s*conj(phase),
                // V(q,q)=c*conj(phase); update A <- V^dag A V.
                const cx vqp = -s * std::conj(phase);
                const cx vqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const cx aip = a(i, p);
                    const cx aiq = a(i, q);
                    a(i, p) = c * aip + vqp * aiq;
                    a(i, q) = s * aip + vqq * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cx apj = a(p, j);
                    const cx aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(vqp) * aqj;
                    a(q, j) = s * apj + std::conj(vqq) * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cx vip = v(i, p);
                    const cx viq = v(i, q);
                    v(i, p) = c * vip + vqp * viq;
                    v(i, q) = s * vip + vqq * viq;
                }
                a(p, q) = cx{0.0, 0.0};
                a(q, p) = cx{0.0, 0.0};
            }
    }

    EigenSystem es;
    es.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return a(l, l).real() < a(r, r).real(); });
    es.vectors = CMat(n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

std::vector<double> hermitian_eigenvalues(const CMat& m, double herm_tol) {
    return hermitian_eigensystem(m, herm_tol).values;
}

CMat partial_transpose(const CMat& rho, Qubit subsystem) {
    if (rho.dim() != 4) throw Error("partial_transpose: expected a 4x4 matrix");
    CMat out(4);
    for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u)
            for (int sp = 0; sp < 2; ++sp)
                for (int up = 0; up < 2; ++up) {
                    const int row = 2 * s + u;
                    const int col = 2 * sp + up;
                    if (subsystem == Qubit::A)
                        out(row, col) = rho(2 * sp + u, 2 * s + up);
                    else
                        out(row, col) = rho(2 * s + up, 2 * sp + u);
                }
    return out;
}

NegativityResult negativity(const CMat& rho) {
    const auto evals = hermitian_eigenvalues(partial_transpose(rho, Qubit::A));
    NegativityResult res;
    for (int k = 0; k < 4; ++k) {
        res.eigenvalues[k] = evals[k];
        if (evals[k] < 0.0) res.neg_sum += -evals[k];
    }
    res.lambda_min = evals[0];
    return res;
}

NegativityResult negativity(const DensityMatrix4& rho) { return negativity(rho.mat); }

namespace {

// (sigma_y x sigma_y) M (sigma_y x sigma_y) computed entrywise:
// (YY)_{k,k'} nonzero only for k' = 3-k, with value -1 for k in {0,3} and +1
// for k in {1,2}.
CMat spin_flip_conjugate(const CMat& m_conj) {
    auto sgn = [](int k) { return (k == 0 || k == 3) ? -1.0 : 1.0; };
    CMat out(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = sgn(r) * sgn(c) * m_conj(3 - r, 3 - c);
    return out;
}

} // namespace

namespace {

// Entries outside the diagonal + anti-diagonal below this scale qualify a
// matrix for the exact X-state expression.
bool is_x_shaped(const CMat& rho, double tol) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (r != c && r + c != 3 && std::abs(rho(r, c)) > tol) return false;
    return true;
}

} // namespace

double concurrence(const CMat& rho) {
    if (rho.dim() != 4) throw Error("concurrence: expected a 4x4 matrix");

    // The generic route below loses ~sqrt(eps) on the square roots of
    // near-zero spin-flip eigenvalues; X-shaped states (the whole analytic
    // state class here) have an exact closed form, so use it when it applies.
    if (is_x_shaped(rho, 1e-13)) {
        const double inner = std::abs(rho(1, 2)) -
                             std::sqrt(std::max(0.0, rho(0, 0).real() * rho(3, 3).real()));
        const double outer = std::abs(rho(0, 3)) -
                             std::sqrt(std::max(0.0, rho(1, 1).real() * rho(2, 2).real()));
        return 2.0 * std::max({0.0, inner, outer});
    }

    const EigenSystem es = hermitian_eigensystem(rho);
    CMat sqrt_rho(4);
    for (int k = 0; k < 4; ++k) {
        double lam = es.values[k];
        if (lam < 0.0 && lam > -1e-12) lam = 0.0; // roundoff clip
        if (lam < 0.0) throw InvalidDensityMatrix("concurrence: negative eigenvalue");
        const double root = std::sqrt(lam);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                sqrt_rho(i, j) += root * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }

    CMat rho_conj(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rho_conj(r, c) = std::conj(rho(r, c));
    const CMat rho_tilde = spin_flip_conjugate(rho_conj);

    CMat herm = sqrt_rho * rho_tilde * sqrt_rho;
    herm.symmetrize_hermitian();
    const auto evals = hermitian_eigenvalues(herm);

    std::array<double, 4> roots{};
    for (int k = 0; k < 4; ++k) {
        double lam = evals[k];
        if (lam < 0.0 && lam > -1e-12) lam = 0.0;
        if (lam < 0.0) throw InvalidDensityMatrix("concurrence: spin-flip spectrum negative");
        roots[k] = std::sqrt(lam);
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double concurrence(const DensityMatrix4& rho) { return concurrence(rho.mat); }

DensityMatrix4 partial_trace(std::span<const cx, 16> amplitudes, double t,
                             Subsystem keep_first, Subsystem keep_second) {
    if (keep_first == keep_second)
        throw InvalidSubsystemPair("partial_trace: keep labels must be distinct");

    const int s1 = static_cast<int>(keep_first);
    const int s2 = static_cast<int>(keep_second);
    int traced[2];
    int nt = 0;
    for (int s = 0; s < 4; ++s)
        if (s != s1 && s != s2) traced[nt++] = s;

    auto compose = [&](int x1, int x2, int z1, int z2) {
        int idx = 0;
        idx |= x1 << (3 - s1);
        idx |= x2 << (3 - s2);
        idx |= z1 << (3 - traced[0]);
        idx |= z2 << (3 - traced[1]);
        return idx;
    };

    CMat rho(4);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int y2 = 0; y2 < 2; ++y2) {
                    // Pairwise tree over the traced pair, invariant under
                    // transposing it, so symmetric inputs reduce to bitwise
                    // identical matrices.
                    auto term = [&](int z1, int z2) {
                        return amplitudes[compose(x1, x2, z1, z2)] *
                               std::conj(amplitudes[compose(y1, y2, z1, z2)]);
                    };
                    rho(2 * x1 + x2, 2 * y1 + y2) =
                        (term(0, 0) + term(1, 1)) + (term(0, 1) + term(1, 0));
                }
    return make_density_matrix4(std::move(rho), t);
}

} // namespace catdyn
