// Timing comparison of the OpenMP kernels against their serial reference.
// The two paths run identical per-item code, so this is purely a wall-clock
// comparison; tests assert the outputs are bitwise equal.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>

#include "mfa/evolution.hpp"
#include "mfa/ops.hpp"
#include "mfa/spectral.hpp"
#include "mfa/validation.hpp"

using namespace mfa;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
    const auto t0 = Clock::now();
    f();
    return seconds(t0, Clock::now());
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n",
                name, serial, parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

    const TensorLayout layout = quick ? TensorLayout{6, 8} : TensorLayout{16, 32};
    const int steps = quick ? 8 : 200;

    SystemParams params;
    params.nu = 0.1;
    params.lambda = 1.0;
    params.chi = 0.005;

    // kron assembly
    {
        const int n = quick ? 64 : 512;
        std::mt19937_64 rng(1);
        Mat a(n, n), b(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) {
                a(i, j) = Complex(uniform_from_bits(rng, -1, 1), uniform_from_bits(rng, -1, 1));
                b(i, j) = a(i, j) * 0.5;
            }
        Mat c_serial, c_parallel;
        const double ts = timed([&] { c_serial = kernels::kron(a.block(0, 0, 16, 16), b, Exec::Serial); });
        const double tp = timed([&] { c_parallel = kernels::kron(a.block(0, 0, 16, 16), b, Exec::Parallel); });
        report("kron (16 x n blocks)", ts, tp);
        if ((c_serial - c_parallel).cwiseAbs().maxCoeff() != 0.0) {
            std::fprintf(stderr, "kron serial/parallel mismatch\n");
            return 1;
        }
    }

    // time-series evolution
    {
        const StateVector psi0 = make_state(
            {AtomSpec::excited(), ModeSpec::coherent(1.0), ModeSpec::fock(0)}, layout);
        const TimeGrid grid{0.0, 10.0, steps};
        EvolveOptions opts;
        ObservableSeries s_serial, s_parallel;
        opts.exec = Exec::Serial;
        const double ts = timed([&] { s_serial = evolve(psi0, PropagatorKind::Exact, grid, params, opts); });
        opts.exec = Exec::Parallel;
        const double tp = timed([&] { s_parallel = evolve(psi0, PropagatorKind::Exact, grid, params, opts); });
        report("evolve exact", ts, tp);
        for (std::size_t k = 0; k < s_serial.times.size(); ++k)
            if (s_serial.inversion[k] != s_parallel.inversion[k]) {
                std::fprintf(stderr, "evolve serial/parallel mismatch at sample %zu\n", k);
                return 1;
            }
    }

    // exact-vs-effective comparison including the operator-distance kernel
    {
        const StateVector psi0 = make_state(
            {AtomSpec::excited(), ModeSpec::coherent(1.0), ModeSpec::fock(0)}, layout);
        const TimeGrid grid{0.0, 10.0, quick ? 4 : 32};
        CompareOptions opts;
        ComparisonReport r_serial, r_parallel;
        opts.exec = Exec::Serial;
        const double ts = timed([&] { r_serial = compare(psi0, params, grid, opts); });
        opts.exec = Exec::Parallel;
        const double tp = timed([&] { r_parallel = compare(psi0, params, grid, opts); });
        report("compare + operator distance", ts, tp);
        for (std::size_t k = 0; k < r_serial.times.size(); ++k)
            if (r_serial.fidelity[k] != r_parallel.fidelity[k] ||
                r_serial.operator_distance[k] != r_parallel.operator_distance[k]) {
                std::fprintf(stderr, "compare serial/parallel mismatch at sample %zu\n", k);
                return 1;
            }
    }

    // validation suite draws
    {
        ValidationOptions opts;
        opts.layout = layout;
        opts.draws = quick ? 2 : 8;
        std::vector<CheckResult> serial_r, parallel_r;
        opts.exec = Exec::Serial;
        const double ts = timed([&] { serial_r = run_validation(opts); });
        opts.exec = Exec::Parallel;
        const double tp = timed([&] { parallel_r = run_validation(opts); });
        report("validation draws", ts, tp);
        for (std::size_t i = 0; i < serial_r.size(); ++i)
            if (serial_r[i].value != parallel_r[i].value) {
                std::fprintf(stderr, "validation serial/parallel mismatch in %s\n",
                             serial_r[i].name.c_str());
                return 1;
            }
    }

    std::puts(quick ? "bench ok (quick)" : "bench ok");
    return 0;
}
