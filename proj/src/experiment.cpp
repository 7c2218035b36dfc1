#include "irsim/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "irsim/rng.hpp"
#include "irsim/training.hpp"

namespace irsim {

namespace {

// Stream purposes. The channel and noise salts deliberately exclude the
// scheme index: every scheme at a given (grid point, trial) sees the same
// fading realization and noise, which keeps scheme-to-scheme MSE gaps free
// of independent Monte-Carlo jitter.
constexpr std::uint64_t kSaltChannel = 0x11;
constexpr std::uint64_t kSaltNoise = 0x22;
constexpr std::uint64_t kSaltDesign = 0x33;

struct TrialOutcome {
    double err_sq = 0.0;
    double chan_pow = 0.0;
    double analytic_eps = 0.0;  // per-coefficient analytic MSE of the design used
};

struct PointContext {
    SystemConfig cfg;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t grid_index = 0;
    const Scheme1Design* optimal1 = nullptr;
    const Scheme2Design* optimal2 = nullptr;
    double optimal1_eps = 0.0;
    double optimal2_eps = 0.0;
};

double estimate_err_sq_scheme1(const ChannelEstimate& est, const ChannelRealization& truth) {
    return (est.d_hat - truth.d).squaredNorm() + (est.Q_hat - truth.Q).squaredNorm();
}

TrialOutcome run_trial(const PointContext& ctx, SchemeId scheme, long trial) {
    const SystemConfig& cfg = ctx.cfg;
    auto chan_eng = make_stream({ctx.seed, ctx.grid_index, static_cast<std::uint64_t>(trial),
                                 kSaltChannel});
    const LinkSet links = sample_link_set(cfg, chan_eng);
    const ChannelRealization truth = cascade(links, cfg.L);

    TrialOutcome out;
    out.chan_pow = truth.d.squaredNorm() + truth.Q.squaredNorm();

    const auto scheme_idx = static_cast<std::uint64_t>(scheme);
    const auto t_idx = static_cast<std::uint64_t>(trial);
    // No scheme index in the noise salt: every scheme sees the same noise
    // at a given (grid point, trial), like the channel draw above.
    const auto noise_stream = [&] {
        return make_stream({ctx.seed, ctx.grid_index, t_idx, kSaltNoise});
    };

    switch (scheme) {
        case SchemeId::kScheme1Optimal: {
            auto noise_eng = noise_stream();
            const auto obs = simulate_rx_scheme1(*ctx.optimal1, truth, cfg.sigma2, noise_eng);
            const auto est = estimate_scheme1(*ctx.optimal1, obs, cfg.L);
            out.err_sq = estimate_err_sq_scheme1(est, truth);
            out.analytic_eps = ctx.optimal1_eps;
            break;
        }
        case SchemeId::kScheme1RandomReflection:
        case SchemeId::kScheme1RandomPilot: {
            return with_design_retries([&](int retry) {
                auto design_eng = make_stream({ctx.seed, ctx.grid_index, t_idx, kSaltDesign,
                                               scheme_idx, static_cast<std::uint64_t>(retry)});
                const Scheme1Design design =
                    scheme == SchemeId::kScheme1RandomReflection
                        ? make_scheme1_random_reflection(cfg, ctx.gamma1, design_eng)
                        : make_scheme1_random_pilot(cfg, ctx.gamma1, design_eng);
                auto noise_eng = noise_stream();
                const auto obs = simulate_rx_scheme1(design, truth, cfg.sigma2, noise_eng);
                const auto est = estimate_scheme1(design, obs, cfg.L);
                TrialOutcome o = out;
                o.err_sq = estimate_err_sq_scheme1(est, truth);
                o.analytic_eps = analytic_mse_scheme1(design, cfg.sigma2, cfg.L);
                return o;
            });
        }
        case SchemeId::kScheme2Optimal: {
            auto noise_eng = noise_stream();
            const auto rx = simulate_rx_scheme2(*ctx.optimal2, links, cfg.L, cfg.sigma2,
                                                noise_eng, RxModel::kPhysical);
            const auto est = estimate_scheme2(*ctx.optimal2, rx.y, cfg.L, cfg.M);
            out.err_sq = (est.lambda_hat - stack_channel(truth)).squaredNorm();
            out.analytic_eps = ctx.optimal2_eps;
            break;
        }
        case SchemeId::kScheme2RandomReflection:
        case SchemeId::kScheme2RandomPilot: {
            return with_design_retries([&](int retry) {
                auto design_eng = make_stream({ctx.seed, ctx.grid_index, t_idx, kSaltDesign,
                                               scheme_idx, static_cast<std::uint64_t>(retry)});
                const Scheme2Design design =
                    scheme == SchemeId::kScheme2RandomReflection
                        ? make_scheme2_random_reflection(cfg, ctx.gamma2, design_eng)
                        : make_scheme2_random_pilot(cfg, ctx.gamma2, design_eng);
                auto noise_eng = noise_stream();
                const auto rx = simulate_rx_scheme2(design, links, cfg.L, cfg.sigma2, noise_eng,
                                                    RxModel::kPhysical);
                const auto est =
                    estimate_scheme2(design, rx.y, cfg.L, cfg.M, EstimatorPath::kGeneral);
                TrialOutcome o = out;
                o.err_sq = (est.lambda_hat - stack_channel(truth)).squaredNorm();
                o.analytic_eps = analytic_mse_scheme2(design, cfg.sigma2, cfg.L, cfg.M);
                return o;
            });
        }
    }
    return out;
}

SweepRow run_point(const PointContext& ctx, SchemeId scheme, double axis_value, int trials,
                   int workers) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialOutcome> outcomes(trials);
    std::vector<std::exception_ptr> failures(trials);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers) if (workers > 1)
#endif
    for (long t = 0; t < trials; ++t) {
        try {
            outcomes[t] = run_trial(ctx, scheme, t);
        } catch (...) {
            failures[t] = std::current_exception();
        }
    }
    for (long t = 0; t < trials; ++t)
        if (failures[t])
            std::rethrow_exception(failures[t]);

    // Fixed-order reduction keeps sums bit-identical for any worker count.
    double err = 0.0, pw = 0.0, eps = 0.0;
    for (const auto& o : outcomes) {
        err += o.err_sq;
        pw += o.chan_pow;
        eps += o.analytic_eps;
    }

    SweepRow row;
    row.axis_value = axis_value;
    row.scheme = scheme;
    row.trials = trials;
    row.mse_sim = normalized_mse(err, pw);
    row.mse_analytic = eps * static_cast<double>(ctx.cfg.L) * (ctx.cfg.M + 1) / pw;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

void write_double(std::string& line, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    line.append(buf, res.ptr);
}

}  // namespace

const char* scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::kScheme1Optimal: return "scheme1_optimal";
        case SchemeId::kScheme1RandomReflection: return "scheme1_random_reflection";
        case SchemeId::kScheme1RandomPilot: return "scheme1_random_pilot";
        case SchemeId::kScheme2Optimal: return "scheme2_optimal";
        case SchemeId::kScheme2RandomReflection: return "scheme2_random_reflection";
        case SchemeId::kScheme2RandomPilot: return "scheme2_random_pilot";
    }
    return "unknown";
}

std::optional<SchemeId> scheme_from_name(std::string_view name) {
    for (int i = 0; i < 6; ++i) {
        const auto id = static_cast<SchemeId>(i);
        if (name == scheme_name(id))
            return id;
    }
    return std::nullopt;
}

double expected_rx_power(const SystemConfig& cfg) {
    const double irs = cfg.M0 * cfg.gamma0 * cfg.gamma0 * std::pow(cfg.D1, -cfg.alpha1) *
                       std::pow(cfg.D2, -cfg.alpha2);
    const double direct = path_gain(cfg.gamma0, cfg.D3, cfg.alpha3);
    return irs + direct;
}

double power_for_snr(const SystemConfig& cfg, double snr_db) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    return snr * cfg.sigma2 * (cfg.N + cfg.L_cp) / expected_rx_power(cfg);
}

double normalized_mse(double err_sq_sum, double channel_power_sum) {
    if (channel_power_sum <= 0.0)
        throw DegenerateChannelError("normalized_mse: channel power sum must be positive");
    return err_sq_sum / channel_power_sum;
}

double monte_carlo_channel_power(const SystemConfig& cfg, long trials, std::uint64_t seed) {
    if (trials < 1)
        throw ParameterError("monte_carlo_channel_power: trials must be >= 1");
    std::vector<double> powers(trials);
    const int workers = sweep_worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
    for (long t = 0; t < trials; ++t) {
        auto eng = make_stream({seed, 0, static_cast<std::uint64_t>(t), kSaltChannel});
        const LinkSet links = sample_link_set(cfg, eng);
        const ChannelRealization real = cascade(links, cfg.L);
        const ComplexVector theta = ComplexVector::Ones(cfg.M);
        powers[t] = effective_cir(real, theta).squaredNorm();
    }
    double sum = 0.0;
    for (double p : powers)
        sum += p;
    return sum / static_cast<double>(trials);
}

int sweep_worker_count() {
    if (const char* env = std::getenv("SIM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 4096)
            throw ParameterError("SIM_THREADS must be a positive integer");
        return static_cast<int>(v);
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

SweepResult run_sweep_with_workers(const ScenarioConfig& scenario, int workers) {
    validate(scenario.base);
    if (scenario.grid.empty())
        throw ParameterError("sweep: grid must be non-empty");
    if (scenario.trials < 1)
        throw ParameterError("sweep: trials must be >= 1");
    if (scenario.schemes.empty())
        throw ParameterError("sweep: at least one scheme is required");
    if (workers < 1)
        throw ParameterError("sweep: workers must be >= 1");

    SweepResult result;
    for (std::size_t gi = 0; gi < scenario.grid.size(); ++gi) {
        const double axis_value = scenario.grid[gi];

        PointContext ctx;
        ctx.cfg = scenario.base;
        double snr_db = axis_value;
        if (scenario.axis == SweepAxis::kKappaDbGrid) {
            ctx.cfg.kappa = std::pow(10.0, axis_value / 10.0);
            snr_db = scenario.snr_db;
        }
        ctx.cfg.P = power_for_snr(ctx.cfg, snr_db);
        ctx.gamma1 = ctx.cfg.P / static_cast<double>(training_duration_scheme1(ctx.cfg));
        ctx.gamma2 = ctx.cfg.P / static_cast<double>(training_duration_scheme2(ctx.cfg));
        ctx.seed = scenario.seed;
        ctx.grid_index = gi;

        // Optimal designs are fixed per grid point; benchmark designs are
        // redrawn per trial.
        const Scheme1Design opt1 = make_scheme1_optimal(ctx.cfg, ctx.gamma1);
        const Scheme2Design opt2 = make_scheme2_optimal(ctx.cfg, ctx.gamma2);
        ctx.optimal1 = &opt1;
        ctx.optimal2 = &opt2;
        ctx.optimal1_eps = analytic_mse_scheme1(opt1, ctx.cfg.sigma2, ctx.cfg.L);
        ctx.optimal2_eps = analytic_mse_scheme2(opt2, ctx.cfg.sigma2, ctx.cfg.L, ctx.cfg.M);

        for (SchemeId scheme : scenario.schemes)
            result.rows.push_back(run_point(ctx, scheme, axis_value, scenario.trials, workers));
    }
    return result;
}

SweepResult run_sweep(const ScenarioConfig& scenario) {
    return run_sweep_with_workers(scenario, sweep_worker_count());
}

SweepResult run_sweep_serial(const ScenarioConfig& scenario) {
    return run_sweep_with_workers(scenario, 1);
}

void export_csv(const SweepResult& result, const std::string& path, bool include_timing) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FileError("export_csv: cannot open " + path);
    std::string text = "axis,scheme,mse_sim,mse_analytic,trials,seconds\n";
    for (const auto& row : result.rows) {
        write_double(text, row.axis_value);
        text += ',';
        text += scheme_name(row.scheme);
        text += ',';
        write_double(text, row.mse_sim);
        text += ',';
        write_double(text, row.mse_analytic);
        text += ',';
        text += std::to_string(row.trials);
        text += ',';
        write_double(text, include_timing ? row.seconds : 0.0);
        text += '\n';
    }
    out << text;
    out.flush();
    if (!out)
        throw FileError("export_csv: write failed for " + path);
}

}  // namespace irsim
