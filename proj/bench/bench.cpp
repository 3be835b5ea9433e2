// Benchmark: the fused OpenMP generator kernel against the serial dense
// operator reference, plus thread scaling of a full RK4 horizon and of a
// concurrence sweep.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "catdyn/closed_forms.hpp"
#include "catdyn/fock.hpp"
#include "catdyn/fock_reference.hpp"
#include "catdyn/measures.hpp"
#include "catdyn/reservoir.hpp"

using namespace catdyn;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int hardware_threads() {
#ifdef _OPENMP
    static const int n = omp_get_max_threads(); // captured before any override
    return n;
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

void bench_rhs(int cutoff, int reps, bool with_reference) {
    // Kernel cost does not depend on the matrix content; a synthetic state
    // avoids the coherent-tail requirement at small cutoffs.
    const fock::FockSpace sp{cutoff, cutoff};
    const int dim = sp.joint_dim();
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / dim;
    m(0, dim - 1) = m(dim - 1, 0) = 0.25 / dim;
    const auto rho = fock::from_cmat(m, sp);

    double t_fused_1 = 0.0, t_fused_n = 0.0, t_dense = 0.0;

    set_threads(1);
    {
        const double t0 = now_seconds();
        for (int r = 0; r < reps; ++r) (void)fock::lindblad_rhs(rho, 1.0, 1.0);
        t_fused_1 = (now_seconds() - t0) / reps;
    }
    set_threads(hardware_threads());
    {
        const double t0 = now_seconds();
        for (int r = 0; r < reps; ++r) (void)fock::lindblad_rhs(rho, 1.0, 1.0);
        t_fused_n = (now_seconds() - t0) / reps;
    }
    if (with_reference) {
        const CMat dense = fock::to_cmat(rho);
        const double t0 = now_seconds();
        (void)fock::reference::lindblad_rhs_dense(dense, cutoff, cutoff, 1.0, 1.0);
        t_dense = now_seconds() - t0;
    }

    std::printf("rhs      cutoff %2d  fused 1T %9.4f ms  fused %dT %9.4f ms", cutoff,
                1e3 * t_fused_1, hardware_threads(), 1e3 * t_fused_n);
    if (with_reference)
        std::printf("  dense ref %9.2f ms  ratio %7.1fx", 1e3 * t_dense,
                    t_dense / t_fused_n);
    std::printf("\n");
}

void bench_integration(int cutoff, double gamma_t) {
    const CatPairState st = equal_weight_state(0.5, 0.5, 1.0, 1.0);
    const fock::FockSpace sp{cutoff, cutoff};
    const double step = fock::max_stable_step(sp, 1.0, 1.0);

    for (int threads : {1, hardware_threads()}) {
        set_threads(threads);
        auto rho = fock::initial_density(st, sp);
        const double t0 = now_seconds();
        fock::integrate(rho, 1.0, 1.0, 0.0, gamma_t, step);
        std::printf("rk4      cutoff %2d  %dT  horizon %.1f  %8.2f s\n", cutoff, threads,
                    gamma_t, now_seconds() - t0);
    }
    set_threads(hardware_threads());
}

void bench_sweep() {
    const ReservoirParams params =
        make_reservoir_params(4.0, 4.0, 1.0, 0.4, std::sqrt(1.0 - 0.16));
    const int points = 2000;
    for (int threads : {1, hardware_threads()}) {
        set_threads(threads);
        const double t0 = now_seconds();
        double acc = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : acc)
        for (int k = 0; k < points; ++k) {
            const double t = 3.0 * k / (points - 1);
            acc += bipartite_concurrences(params, t).ara;
        }
        std::printf("sweep    %4d concurrence points  %dT  %8.3f s  (checksum %.6f)\n",
                    points, threads, now_seconds() - t0, acc);
    }
    set_threads(hardware_threads());
}

} // namespace

int main() {
    std::printf("threads available: %d\n", hardware_threads());
    bench_rhs(8, 50, true);
    bench_rhs(12, 50, true);
    bench_rhs(16, 20, true);
    bench_rhs(30, 10, false);
    bench_integration(16, 1.0);
    bench_integration(30, 0.5);
    bench_sweep();
    return 0;
}
