// Times the Monte-Carlo sweep with the serial reference driver and with
// OpenMP workers, and checks that both produce bit-identical rows.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "irsim/experiment.hpp"

namespace {

irsim::ScenarioConfig bench_scenario(int trials) {
    irsim::ScenarioConfig sc;
    sc.axis = irsim::SweepAxis::kSnrDbGrid;
    sc.grid = {0.0, 10.0, 20.0};
    sc.trials = trials;
    sc.seed = 7;
    sc.schemes = {irsim::SchemeId::kScheme1Optimal, irsim::SchemeId::kScheme2Optimal,
                  irsim::SchemeId::kScheme2RandomReflection};
    return sc;
}

bool rows_identical(const irsim::SweepResult& a, const irsim::SweepResult& b) {
    if (a.rows.size() != b.rows.size())
        return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i];
        const auto& y = b.rows[i];
        if (x.axis_value != y.axis_value || x.scheme != y.scheme || x.mse_sim != y.mse_sim ||
            x.mse_analytic != y.mse_analytic || x.trials != y.trials)
            return false;
    }
    return true;
}

double time_sweep(const irsim::ScenarioConfig& sc, int workers, irsim::SweepResult* out) {
    const auto t0 = std::chrono::steady_clock::now();
    *out = irsim::run_sweep_with_workers(sc, workers);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int trials = 400;
    if (argc > 1)
        trials = std::atoi(argv[1]);
    if (trials < 1) {
        std::fprintf(stderr, "usage: %s [trials]\n", argv[0]);
        return 2;
    }

    const irsim::ScenarioConfig sc = bench_scenario(trials);

#ifdef _OPENMP
    const int max_workers = omp_get_max_threads();
#else
    const int max_workers = 1;
#endif

    irsim::SweepResult reference;
    const double serial_s = time_sweep(sc, 1, &reference);
    std::printf("%8s %12s %10s %10s\n", "workers", "seconds", "speedup", "identical");
    std::printf("%8d %12.3f %10.2f %10s\n", 1, serial_s, 1.0, "ref");

    bool all_identical = true;
    for (int workers = 2; workers <= max_workers; workers *= 2) {
        irsim::SweepResult result;
        const double s = time_sweep(sc, workers, &result);
        const bool same = rows_identical(reference, result);
        all_identical = all_identical && same;
        std::printf("%8d %12.3f %10.2f %10s\n", workers, s, serial_s / s, same ? "yes" : "NO");
    }

    if (!all_identical) {
        std::fprintf(stderr, "parallel results deviate from the serial reference\n");
        return 1;
    }
    return 0;
}
