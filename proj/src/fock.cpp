#include "catdyn/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "catdyn/core_states.hpp"

namespace catdyn::fock {

int choose_cutoff(double max_abs_amplitude) {
    const double x = max_abs_amplitude * max_abs_amplitude;
    double term = std::exp(-x); // Poisson weight at n = 0
    double cum = term;
    int n = 0;
    while (1.0 - cum >= 1e-10) {
        ++n;
        if (n > 4096) throw CutoffTooSmall("choose_cutoff: amplitude too large");
        term *= x / n;
        cum += term;
    }
    return n + 5;
}

std::vector<cx> coherent_fock_vector(Amplitude alpha, int cutoff, double* tail_out) {
    if (cutoff < 0) throw CutoffTooSmall("coherent_fock_vector: negative cutoff");
    std::vector<cx> v(cutoff + 1);
    cx term = std::exp(cx{-0.5 * std::norm(alpha), 0.0});
    double norm_sq = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        v[n] = term;
        norm_sq += std::norm(term);
        term *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    const double tail = std::max(0.0, 1.0 - norm_sq);
    if (tail_out) *tail_out = tail;
    if (tail >= 1e-10)
        throw CutoffTooSmall("coherent_fock_vector: truncation tail above 1e-10");
    return v;
}

FockDensity initial_density(const CatPairState& state, const FockSpace& space) {
    const auto va1 = coherent_fock_vector(state.alpha1, space.n_a);
    const auto va2 = coherent_fock_vector(state.alpha2, space.n_a);
    const auto vb1 = coherent_fock_vector(state.beta1, space.n_b);
    const auto vb2 = coherent_fock_vector(state.beta2, space.n_b);

    std::vector<cx> psi(space.pad_dim(), cx{0.0, 0.0});
    for (int na = 0; na < space.dim_a(); ++na)
        for (int nb = 0; nb < space.dim_b(); ++nb) {
            const cx a_part1 = state.c[0][0] * vb1[nb] + state.c[0][1] * vb2[nb];
            const cx a_part2 = state.c[1][0] * vb1[nb] + state.c[1][1] * vb2[nb];
            psi[space.flat(na, nb)] = va1[na] * a_part1 + va2[na] * a_part2;
        }

    double norm_sq = 0.0;
    for (const cx& a : psi) norm_sq += std::norm(a);
    if (!(norm_sq > 0.0)) throw ZeroState("initial_density: vanishing state");
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (cx& a : psi) a *= scale;

    FockDensity rho;
    rho.space = space;
    rho.trace_deficit = 1.0 - norm_sq;
    rho.mat.assign(static_cast<std::size_t>(space.pad_dim()) * space.pad_dim(), cx{0.0, 0.0});
    for (int na = 0; na < space.dim_a(); ++na)
        for (int nb = 0; nb < space.dim_b(); ++nb) {
            const int r = space.flat(na, nb);
            for (int ma = na; ma < space.dim_a(); ++ma) {
                const int mb0 = (ma == na) ? nb : 0;
                for (int mb = mb0; mb < space.dim_b(); ++mb)
                    rho.at(r, space.flat(ma, mb)) = psi[r] * std::conj(psi[space.flat(ma, mb)]);
            }
        }
    return rho;
}

double trace(const FockDensity& rho) {
    double tr = 0.0;
    for (int na = 0; na < rho.space.dim_a(); ++na)
        for (int nb = 0; nb < rho.space.dim_b(); ++nb) {
            const int r = rho.space.flat(na, nb);
            tr += rho.at(r, r).real();
        }
    return tr;
}

std::pair<double, double> mean_photon_numbers(const FockDensity& rho) {
    double mean_a = 0.0, mean_b = 0.0;
    for (int na = 0; na < rho.space.dim_a(); ++na)
        for (int nb = 0; nb < rho.space.dim_b(); ++nb) {
            const int r = rho.space.flat(na, nb);
            const double p = rho.at(r, r).real();
            mean_a += na * p;
            mean_b += nb * p;
        }
    return {mean_a, mean_b};
}

CMat to_cmat(const FockDensity& rho) {
    const int da = rho.space.dim_a();
    const int db = rho.space.dim_b();
    CMat m(static_cast<std::size_t>(da) * db);
    for (int na = 0; na < da; ++na)
        for (int nb = 0; nb < db; ++nb) {
            const int r = rho.space.flat(na, nb);
            const int i = na * db + nb;
            for (int ma = na; ma < da; ++ma) {
                const int mb0 = (ma == na) ? nb : 0;
                for (int mb = mb0; mb < db; ++mb) {
                    const cx v = rho.at(r, rho.space.flat(ma, mb));
                    const int j = ma * db + mb;
                    m(i, j) = v;
                    m(j, i) = std::conj(v);
                }
            }
        }
    return m;
}

FockDensity from_cmat(const CMat& m, const FockSpace& space) {
    const int da = space.dim_a();
    const int db = space.dim_b();
    if (m.dim() != static_cast<std::size_t>(da) * db)
        throw Error("from_cmat: dimension mismatch");
    FockDensity rho;
    rho.space = space;
    rho.mat.assign(static_cast<std::size_t>(space.pad_dim()) * space.pad_dim(), cx{0.0, 0.0});
    for (int na = 0; na < da; ++na)
        for (int nb = 0; nb < db; ++nb) {
            const int r = space.flat(na, nb);
            for (int ma = na; ma < da; ++ma) {
                const int mb0 = (ma == na) ? nb : 0;
                for (int mb = mb0; mb < db; ++mb)
                    rho.at(r, space.flat(ma, mb)) = m(na * db + nb, ma * db + mb);
            }
        }
    return rho;
}

namespace {

// One fused Horner stage of the classical RK4 for the linear generator:
//   out[rc] = y[rc] + coef * L(z)[rc]
// over the upper triangle of physical entries. Ghost reads are zero.
template <class T>
void rk4_stage(const T* z, const T* y, T* out, double coef, const FockSpace& sp,
               double gamma_a, double gamma_b, const double* sqa, const double* sqb) {
    const int na_dim = sp.dim_a();
    const int nb_dim = sp.dim_b();
    const int pb = sp.pad_b();
    const std::size_t ld = sp.pad_dim();

#pragma omp parallel for schedule(dynamic, 16)
    for (int row = 0; row < na_dim * nb_dim; ++row) {
        const int na = row / nb_dim;
        const int nb = row % nb_dim;
        const int r = na * pb + nb;
        const T* zr = z + static_cast<std::size_t>(r) * ld;
        const T* zra = zr + static_cast<std::size_t>(pb) * ld + pb; // (r+pb, c+pb)
        const T* zrb = zr + ld + 1;                                 // (r+1, c+1)
        const T* yr = y + static_cast<std::size_t>(r) * ld;
        T* outr = out + static_cast<std::size_t>(r) * ld;

        const double base = -0.5 * (gamma_a * na + gamma_b * nb);
        const double hop_b = gamma_b * sqb[nb];
        for (int ma = na; ma < na_dim; ++ma) {
            const double hop_a = gamma_a * sqa[na] * sqa[ma];
            const double diag0 = base - 0.5 * gamma_a * ma;
            const int c0 = ma * pb;
            const int mb_lo = (ma == na) ? nb : 0;
            for (int mb = mb_lo; mb < nb_dim; ++mb) {
                const int c = c0 + mb;
                const T rhs = (diag0 - 0.5 * gamma_b * mb) * zr[c] + hop_a * zra[c] +
                              hop_b * sqb[mb] * zrb[c];
                outr[c] = yr[c] + coef * rhs;
            }
        }
    }
}

template <class T>
void rk4_run(std::vector<T>& y, const FockSpace& sp, double gamma_a, double gamma_b,
             double h, long steps) {
    std::vector<double> sqa(sp.dim_a() + 1), sqb(sp.dim_b() + 1);
    for (int n = 0; n < static_cast<int>(sqa.size()); ++n) sqa[n] = std::sqrt(n + 1.0);
    for (int n = 0; n < static_cast<int>(sqb.size()); ++n) sqb[n] = std::sqrt(n + 1.0);

    std::vector<T> z(y.size(), T{}), z2(y.size(), T{});
    for (long s = 0; s < steps; ++s) {
        rk4_stage(y.data(), y.data(), z.data(), h / 4.0, sp, gamma_a, gamma_b, sqa.data(),
                  sqb.data());
        rk4_stage(z.data(), y.data(), z2.data(), h / 3.0, sp, gamma_a, gamma_b, sqa.data(),
                  sqb.data());
        rk4_stage(z2.data(), y.data(), z.data(), h / 2.0, sp, gamma_a, gamma_b, sqa.data(),
                  sqb.data());
        rk4_stage(z.data(), y.data(), y.data(), h, sp, gamma_a, gamma_b, sqa.data(),
                  sqb.data());
    }
}

bool is_real(const FockDensity& rho) {
    for (const cx& v : rho.mat)
        if (v.imag() != 0.0) return false;
    return true;
}

} // namespace

FockDensity lindblad_rhs(const FockDensity& rho, double gamma_a, double gamma_b) {
    std::vector<double> sqa(rho.space.dim_a() + 1), sqb(rho.space.dim_b() + 1);
    for (int n = 0; n < static_cast<int>(sqa.size()); ++n) sqa[n] = std::sqrt(n + 1.0);
    for (int n = 0; n < static_cast<int>(sqb.size()); ++n) sqb[n] = std::sqrt(n + 1.0);

    FockDensity out;
    out.space = rho.space;
    out.trace_deficit = rho.trace_deficit;
    out.mat.assign(rho.mat.size(), cx{0.0, 0.0});
    // out = 0 + 1 * L(rho)
    std::vector<cx> zero(rho.mat.size(), cx{0.0, 0.0});
    rk4_stage<cx>(rho.mat.data(), zero.data(), out.mat.data(), 1.0, rho.space, gamma_a,
                  gamma_b, sqa.data(), sqb.data());
    return out;
}

double max_stable_step(const FockSpace& space, double gamma_a, double gamma_b) {
    const double fastest = std::max(gamma_a * space.n_a, gamma_b * space.n_b);
    if (!(fastest > 0.0)) return std::numeric_limits<double>::infinity();
    return 0.01 / fastest;
}

void integrate(FockDensity& rho, double gamma_a, double gamma_b, double t_from, double t_to,
               double step) {
    if (t_to < t_from) throw Error("integrate: t_to < t_from");
    if (!(step > 0.0)) throw StepTooLarge("integrate: step must be positive");
    const double bound = max_stable_step(rho.space, gamma_a, gamma_b);
    if (step > bound) throw StepTooLarge("integrate: step above the stability bound");
    const double span = t_to - t_from;
    if (span == 0.0) return;
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / step - 1e-12)));
    const double h = span / static_cast<double>(steps);

    if (is_real(rho)) {
        // Real states stay real under the damping generator; integrate the
        // real part only (half the bandwidth and arithmetic).
        std::vector<double> y(rho.mat.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = rho.mat[i].real();
        rk4_run<double>(y, rho.space, gamma_a, gamma_b, h, steps);
        for (std::size_t i = 0; i < y.size(); ++i) rho.mat[i] = cx{y[i], 0.0};
    } else {
        rk4_run<cx>(rho.mat, rho.space, gamma_a, gamma_b, h, steps);
    }
}

std::vector<FockDensity> integrate_grid(FockDensity rho0, double gamma_a, double gamma_b,
                                        std::span<const double> t_grid, double step) {
    std::vector<FockDensity> out;
    out.reserve(t_grid.size());
    double t_cur = 0.0;
    for (double t : t_grid) {
        if (t < t_cur) throw Error("integrate_grid: grid must ascend from 0");
        integrate(rho0, gamma_a, gamma_b, t_cur, t, step);
        t_cur = t;
        out.push_back(rho0);
    }
    return out;
}

double step_halving_check(const FockDensity& rho0, double gamma_a, double gamma_b,
                          std::span<const double> t_grid, double step, double threshold) {
    const auto full = integrate_grid(rho0, gamma_a, gamma_b, t_grid, step);
    const auto half = integrate_grid(rho0, gamma_a, gamma_b, t_grid, 0.5 * step);
    double worst = 0.0;
    for (std::size_t k = 0; k < full.size(); ++k)
        worst = std::max(worst, frobenius_distance(to_cmat(full[k]), to_cmat(half[k])));
    if (worst > threshold)
        throw StepTooLarge("step_halving_check: halving changes the trajectory by " +
                           std::to_string(worst));
    return worst;
}

Projection project_to_qubit_basis(const FockDensity& rho, const OrthoBasisMap& basis_a,
                                  const OrthoBasisMap& basis_b, double max_leakage) {
    const FockSpace& sp = rho.space;
    // Orthonormal per-mode kets |s> = N_s (|xi1> + s phase |xi2>) in Fock form.
    const auto va1 = coherent_fock_vector(basis_a.xi1, sp.n_a);
    const auto va2 = coherent_fock_vector(basis_a.xi2, sp.n_a);
    const auto vb1 = coherent_fock_vector(basis_b.xi1, sp.n_b);
    const auto vb2 = coherent_fock_vector(basis_b.xi2, sp.n_b);

    std::array<std::vector<cx>, 2> ket_a, ket_b;
    for (int s = 0; s < 2; ++s) {
        const double sign = s == 0 ? 1.0 : -1.0;
        const double na_norm = s == 0 ? basis_a.n_plus : basis_a.n_minus;
        const double nb_norm = s == 0 ? basis_b.n_plus : basis_b.n_minus;
        ket_a[s].resize(va1.size());
        ket_b[s].resize(vb1.size());
        for (std::size_t n = 0; n < va1.size(); ++n)
            ket_a[s][n] = na_norm * (va1[n] + sign * basis_a.phase_unit * va2[n]);
        for (std::size_t n = 0; n < vb1.size(); ++n)
            ket_b[s][n] = nb_norm * (vb1[n] + sign * basis_b.phase_unit * vb2[n]);
    }

    // Joint kets |k> = |s>_a |u>_b in the padded layout.
    std::array<std::vector<cx>, 4> kets;
    for (int s = 0; s < 2; ++s)
        for (int u = 0; u < 2; ++u) {
            auto& k = kets[2 * s + u];
            k.assign(sp.pad_dim(), cx{0.0, 0.0});
            for (int na = 0; na < sp.dim_a(); ++na)
                for (int nb = 0; nb < sp.dim_b(); ++nb)
                    k[sp.flat(na, nb)] = ket_a[s][na] * ket_b[u][nb];
        }

    // w_k = rho |k> through the stored upper triangle.
    std::array<std::vector<cx>, 4> w;
    for (int k = 0; k < 4; ++k) w[k].assign(sp.pad_dim(), cx{0.0, 0.0});
    for (int na = 0; na < sp.dim_a(); ++na)
        for (int nb = 0; nb < sp.dim_b(); ++nb) {
            const int r = sp.flat(na, nb);
            for (int ma = na; ma < sp.dim_a(); ++ma) {
                const int mb0 = (ma == na) ? nb : 0;
                for (int mb = mb0; mb < sp.dim_b(); ++mb) {
                    const int c = sp.flat(ma, mb);
                    const cx v = rho.at(r, c);
                    for (int k = 0; k < 4; ++k) {
                        w[k][r] += v * kets[k][c];
                        if (c != r) w[k][c] += std::conj(v) * kets[k][r];
                    }
                }
            }
        }

    CMat proj(4);
    for (int k = 0; k < 4; ++k)
        for (int kp = 0; kp < 4; ++kp) {
            cx e{0.0, 0.0};
            for (int i = 0; i < sp.pad_dim(); ++i) e += std::conj(kets[k][i]) * w[kp][i];
            proj(k, kp) = e;
        }
    proj.symmetrize_hermitian();

    const double kept = proj.trace().real();
    const double leakage = 1.0 - kept;
    if (leakage > max_leakage)
        throw LeakageExceeded("project_to_qubit_basis: leakage " + std::to_string(leakage));
    if (!(kept > 0.0)) throw Error("project_to_qubit_basis: empty projection");
    proj *= cx{1.0 / kept, 0.0};

    Projection out;
    out.leakage = leakage;
    out.rho4 = make_density_matrix4(std::move(proj), 0.0, basis_a, basis_b, 1e-9);
    return out;
}

} // namespace catdyn::fock
