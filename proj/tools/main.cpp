#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vp1d/errors.hpp"
#include "vp1d/run.hpp"

namespace {

// exit codes: 0 ok, 1 comparison failure, 2 config error, 3 support escape,
// 4 numeric failure
constexpr int kOk = 0;
constexpr int kCompareFail = 1;
constexpr int kConfigError = 2;
constexpr int kSupportEscape = 3;
constexpr int kNumericError = 4;

vp1d::RunConfig load_config(const std::string& path, const std::string& output_override) {
    vp1d::RunConfig cfg = vp1d::RunConfig::parse_file(path);
    if (!output_override.empty())
        cfg.output_dir = output_override;
    else if (const char* env = std::getenv("VP1D_OUTPUT_DIR"); env && *env)
        cfg.output_dir = env;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vp1d: 1D1V two-species Vlasov-Poisson simulator with decay diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string snapshot_path;
    std::string output_override;
    double radius = 2.0;

    CLI::App* run_cmd = app.add_subcommand("run", "run a simulation from a config file");
    run_cmd->add_option("config", config_path, "run configuration file")->required();
    run_cmd->add_option("-o,--output-dir", output_override,
                        "override output directory (also: VP1D_OUTPUT_DIR)");

    CLI::App* cmp_cmd =
        app.add_subcommand("compare", "run grid solver and particle oracle, compare");
    cmp_cmd->add_option("config", config_path, "run configuration file")->required();
    cmp_cmd->add_option("-o,--output-dir", output_override,
                        "override output directory (also: VP1D_OUTPUT_DIR)");

    CLI::App* diag_cmd = app.add_subcommand("diagnose", "print diagnostics of a snapshot file");
    diag_cmd->add_option("snapshot", snapshot_path, "snapshot file")->required();
    diag_cmd->add_option("-R,--radius", radius, "local charge radius");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const vp1d::RunConfig cfg = load_config(config_path, output_override);
            const vp1d::RunResult res = vp1d::run_simulation(cfg, true);
            std::cout << "wrote " << res.csv_path << " (" << res.summary.n_steps
                      << " steps, dt = " << res.summary.dt << ")\n";
            const vp1d::DiagnosticsRecord& last = res.trace.back().rec;
            std::cout << "final: t = " << last.t << ", E_inf = " << last.E_inf
                      << ", Q = " << last.Q << ", mass drift f/g = "
                      << res.summary.max_mass_drift_f << "/" << res.summary.max_mass_drift_g
                      << ", energy drift = " << res.summary.max_energy_drift << "\n";
            return kOk;
        }
        if (cmp_cmd->parsed()) {
            const vp1d::RunConfig cfg = load_config(config_path, output_override);
            const vp1d::CompareResult cr = vp1d::run_compare(cfg, true);
            std::cout << "grid vs oracle: dQ = " << cr.max_rel_diff_Q
                      << ", dF = " << cr.max_rel_diff_F << ", dG = " << cr.max_rel_diff_G
                      << ", dE = " << cr.max_rel_diff_E << " -> "
                      << (cr.pass ? "pass" : "FAIL") << "\n";
            if (!cr.report_path.empty())
                std::cout << "wrote " << cr.report_path << "\n";
            return cr.pass ? kOk : kCompareFail;
        }
        vp1d::diagnose_snapshot(snapshot_path, std::cout, radius);
        return kOk;
    } catch (const vp1d::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const vp1d::support_escape_error& e) {
        std::cerr << e.what() << "\n";
        return kSupportEscape;
    } catch (const vp1d::numeric_error& e) {
        std::cerr << e.what() << "\n";
        return kNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCompareFail;
    }
}
