#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irsim/channel.hpp"
#include "irsim/errors.hpp"
#include "irsim/scheme1.hpp"
#include "irsim/scheme2.hpp"

namespace irsim {

enum class SweepAxis { kSnrDbGrid, kKappaDbGrid };

enum class SchemeId {
    kScheme1Optimal,
    kScheme1RandomReflection,
    kScheme1RandomPilot,
    kScheme2Optimal,
    kScheme2RandomReflection,
    kScheme2RandomPilot,
};

const char* scheme_name(SchemeId id);
std::optional<SchemeId> scheme_from_name(std::string_view name);

// One Monte-Carlo experiment: a parameter grid, a trial budget and the set
// of training designs to compare.
struct ScenarioConfig {
    SystemConfig base;
    SweepAxis axis = SweepAxis::kSnrDbGrid;
    std::vector<double> grid;
    int trials = 1000;
    std::uint64_t seed = 1;
    std::vector<SchemeId> schemes;
    double snr_db = 20.0;  // operating SNR when sweeping kappa
};

struct SweepRow {
    double axis_value = 0.0;
    SchemeId scheme = SchemeId::kScheme1Optimal;
    double mse_sim = 0.0;       // normalized simulated MSE
    double mse_analytic = 0.0;  // analytic MSE on the same normalization
    long trials = 0;
    double seconds = 0.0;  // wall time; diagnostics only, not reproducible
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Closed-form mean received channel power
/// M0 gamma0^2 D1^-alpha1 D2^-alpha2 + gamma0 D3^-alpha3.
double expected_rx_power(const SystemConfig& cfg);

/// Training energy budget P that realizes the requested SNR,
/// P = snr * sigma2 * (N + L_cp) / expected_rx_power.
double power_for_snr(const SystemConfig& cfg, double snr_db);

/// Ratio-of-sums normalization: accumulated squared error over accumulated
/// true channel power.
double normalized_mse(double err_sq_sum, double channel_power_sum);

/// Monte-Carlo mean of |d + Q 1|^2, the empirical counterpart of
/// expected_rx_power.
double monte_carlo_channel_power(const SystemConfig& cfg, long trials, std::uint64_t seed);

// A trial whose random benchmark design turns out numerically singular is
// redrawn with a fresh design stream, up to this many retries; then the
// sweep aborts.
inline constexpr int kMaxDesignRetries = 10;

template <typename F>
auto with_design_retries(F&& attempt) {
    for (int retry = 0;; ++retry) {
        try {
            return attempt(retry);
        } catch (const SingularSystemError&) {
            if (retry >= kMaxDesignRetries)
                throw;
        }
    }
}

/// Worker count for trial parallelism: the SIM_THREADS environment variable
/// when set, otherwise the available hardware parallelism.
int sweep_worker_count();

/// Runs every (grid point, scheme) cell of the scenario. Each trial draws
/// its streams from (seed, grid index, trial index), so the result is
/// bit-identical for any worker count. Scheme 2 reception always uses the
/// physical model, so L2 > 1 model mismatch shows up in the measured MSE.
SweepResult run_sweep(const ScenarioConfig& scenario);

/// Single-threaded reference driver around the same per-trial code;
/// produces bit-identical rows to run_sweep.
SweepResult run_sweep_serial(const ScenarioConfig& scenario);

/// Explicit worker count (1 = serial loop).
SweepResult run_sweep_with_workers(const ScenarioConfig& scenario, int workers);

/// Writes `axis,scheme,mse_sim,mse_analytic,trials,seconds`, one row per
/// result row, full double precision. The seconds column is written as 0
/// unless include_timing is set, keeping default exports byte-reproducible.
void export_csv(const SweepResult& result, const std::string& path, bool include_timing = false);

}  // namespace irsim
