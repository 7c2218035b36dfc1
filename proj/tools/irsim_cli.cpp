#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "irsim/scenario.hpp"
#include "irsim/training.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoFailure = 3;

double to_db(double x) {
    return 10.0 * std::log10(x);
}

// Operating SNR used by verify/gain: the explicit value for kappa sweeps,
// otherwise the first grid point.
double reference_snr_db(const irsim::ScenarioConfig& sc) {
    return sc.axis == irsim::SweepAxis::kKappaDbGrid ? sc.snr_db : sc.grid.front();
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path,
                 std::optional<int> trials, std::optional<std::uint64_t> seed, bool timing) {
    irsim::ScenarioConfig sc = irsim::load_scenario(scenario_path);
    if (trials)
        sc.trials = *trials;
    if (seed)
        sc.seed = *seed;
    if (sc.trials < 1) {
        std::cerr << "error: --trials must be >= 1\n";
        return kExitInvalidInput;
    }

    const irsim::SweepResult result = irsim::run_sweep(sc);
    irsim::export_csv(result, out_path, timing);

    std::printf("%10s  %-26s %12s %12s %8s %9s\n", "axis", "scheme", "sim [dB]", "analytic",
                "gap", "sec");
    for (const auto& row : result.rows) {
        const double sim_db = to_db(row.mse_sim);
        const double an_db = to_db(row.mse_analytic);
        std::printf("%10.2f  %-26s %12.2f %12.2f %8.2f %9.2f\n", row.axis_value,
                    irsim::scheme_name(row.scheme), sim_db, an_db, sim_db - an_db, row.seconds);
    }
    std::printf("wrote %zu rows to %s\n", result.rows.size(), out_path.c_str());
    return kExitOk;
}

int cmd_verify(const std::string& scenario_path, const std::string& export_prefix) {
    const irsim::ScenarioConfig sc = irsim::load_scenario(scenario_path);
    irsim::SystemConfig cfg = sc.base;
    cfg.P = irsim::power_for_snr(cfg, reference_snr_db(sc));

    const long eta1 = irsim::training_duration_scheme1(cfg);
    const long eta2 = irsim::training_duration_scheme2(cfg);
    const double gamma1 = cfg.P / static_cast<double>(eta1);
    const double gamma2 = cfg.P / static_cast<double>(eta2);

    const irsim::Scheme1Design d1 = irsim::make_scheme1_optimal(cfg, gamma1);
    const irsim::Scheme2Design d2 = irsim::make_scheme2_optimal(cfg, gamma2);

    if (!export_prefix.empty()) {
        irsim::export_scheme1_design_csv(d1, export_prefix);
        irsim::export_scheme2_design_csv(d2, export_prefix);
        std::printf("exported design streams to %s{scheme1,scheme2}_{pilot,reflection}.csv\n",
                    export_prefix.c_str());
    }

    // Relative residuals of every orthogonality condition the optimal
    // designs are supposed to satisfy.
    const auto rows1 = d1.Psi.rows();
    const double psi_scale = static_cast<double>(d1.Psi.cols());
    const double r_psi = (d1.Psi * d1.Psi.adjoint() -
                          psi_scale * irsim::ComplexMatrix::Identity(rows1, rows1))
                             .cwiseAbs()
                             .maxCoeff() /
                         psi_scale;
    const double r_pilot1 =
        (d1.s.cwiseAbs2().array() - gamma1).abs().maxCoeff() / gamma1;

    const auto report = irsim::verify_scheme2_orthogonality(d2, cfg.L, cfg.M);
    const irsim::ComplexMatrix xi = irsim::build_xi(d2, cfg.L, cfg.M);
    const auto cols = xi.cols();
    const double r_xi =
        (xi.adjoint() * xi - report.scale * irsim::ComplexMatrix::Identity(cols, cols)).norm() /
        report.scale;

    const double tol = 1e-9;
    struct Line {
        const char* name;
        double residual;
    } lines[] = {
        {"Psi Psi^H = I0 I          ", r_psi},
        {"S^H S = gamma1 I          ", r_pilot1},
        {"X^H X = gamma2 N I        ", report.pilot_gram_residual / report.scale},
        {"max cross-block           ", report.max_cross_residual / report.scale},
        {"Xi^H Xi = gamma2 N I      ", r_xi},
    };
    bool all_ok = true;
    for (const auto& line : lines) {
        const bool ok = line.residual <= tol;
        all_ok = all_ok && ok;
        std::printf("%s relative residual %.3e  [%s]\n", line.name, line.residual,
                    ok ? "ok" : "FAIL");
    }

    const long long mults1 = static_cast<long long>(cfg.N0) * cfg.L * (cfg.I0 + 1) +
                             static_cast<long long>(cfg.L) * cfg.I0 * (cfg.M + 1);
    const long long mults2 = static_cast<long long>(cfg.N) * cfg.L * (cfg.M + 1);
    std::printf("training duration: eta1 = %ld, eta2 = %ld sampling periods\n", eta1, eta2);
    std::printf("estimator multiplications: scheme1 = %lld, scheme2 = %lld\n", mults1, mults2);
    return all_ok ? kExitOk : kExitVerifyFail;
}

int cmd_gain(const std::string& scenario_path) {
    const irsim::ScenarioConfig sc = irsim::load_scenario(scenario_path);
    irsim::SystemConfig cfg = sc.base;
    cfg.P = irsim::power_for_snr(cfg, reference_snr_db(sc));

    const long eta1 = irsim::training_duration_scheme1(cfg);
    const long eta2 = irsim::training_duration_scheme2(cfg);
    const double gamma1 = cfg.P / static_cast<double>(eta1);
    const double gamma2 = cfg.P / static_cast<double>(eta2);
    const double gain = irsim::mse_gain_db(gamma1, gamma2, cfg.N, cfg.M);

    std::printf("eta1 = %ld, eta2 = %ld sampling periods (ratio %.2f)\n", eta1, eta2,
                static_cast<double>(eta2) / static_cast<double>(eta1));
    std::printf("gamma1 = %.6e, gamma2 = %.6e (equal budget P = %.6e)\n", gamma1, gamma2,
                cfg.P);
    std::printf("MSE gain of scheme 2 over scheme 1: G = %.2f dB\n", gain);
    std::printf("(G = 10 log10(gamma2 N / (gamma1 (M+1))); independent of P)\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fast channel estimation for IRS-assisted OFDM: training design "
                 "verification and Monte-Carlo MSE sweeps"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, export_prefix;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    bool timing = false;

    auto* simulate = app.add_subcommand("simulate", "Run a Monte-Carlo MSE sweep, write CSV");
    simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_path, "Output CSV path")->required();
    simulate->add_option("--trials", trials, "Override trial count");
    simulate->add_option("--seed", seed, "Override RNG seed");
    simulate->add_flag("--timing", timing,
                       "Write measured wall times into the CSV (not byte-reproducible)");

    auto* verify = app.add_subcommand("verify", "Check training-design orthogonality");
    verify->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    verify->add_option("--export-designs", export_prefix,
                       "Write the optimal pilot/reflection streams as CSV files with this "
                       "path prefix");

    auto* gain = app.add_subcommand("gain", "Print training durations and the MSE gain law");
    gain->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (simulate->parsed())
            return cmd_simulate(scenario_path, out_path, trials, seed, timing);
        if (verify->parsed())
            return cmd_verify(scenario_path, export_prefix);
        return cmd_gain(scenario_path);
    } catch (const irsim::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoFailure;
    } catch (const irsim::SingularSystemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const std::invalid_argument& e) {
        // ParameterError, DimensionError, RootError, ... : bad input.
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
