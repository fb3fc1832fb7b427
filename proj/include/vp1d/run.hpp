#ifndef VP1D_RUN_HPP
#define VP1D_RUN_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vp1d/config.hpp"
#include "vp1d/diagnostics.hpp"
#include "vp1d/phase_space.hpp"

namespace vp1d {

// One per-step trace entry; CSV rows are the cadence subset.
struct RunRow {
    DiagnosticsRecord rec;
    double dQdt_fd = 0.0;
    double int_Q = 0.0;
    double int_L4 = 0.0;
    double int_L74 = 0.0;
    double int_Einf3 = 0.0;
    bool audited = false;
    VirialLedger ledger; // valid when audited
};

struct RunSummary {
    long n_steps = 0;
    double dt = 0.0;
    double max_gauss_rel = 0.0;      // discrete Gauss-law mismatch, relative
    double max_eq4_excess = 0.0;     // (E_inf^3 - 3Q - allowance) / scale, signed
    double max_mass_drift_f = 0.0;   // relative to t=0
    double max_mass_drift_g = 0.0;
    double max_energy_drift = 0.0;   // relative to t=0
    double max_neutrality_drift = 0.0;
    double min_f = 0.0;              // grid minimum over the whole run
    double min_g = 0.0;
    double sup_E_inf = 0.0;
};

struct RunResult {
    SystemState final_state;
    std::vector<RunRow> trace; // every step, including t=0
    RunSummary summary;
    std::string csv_path; // empty when output was not written
};

SystemState build_initial_state(const RunConfig& cfg);

// Executes the time loop. With write_output, creates the output directory
// and writes timeseries.csv (plus snapshots); on support escape the partial
// CSV is flushed before support_escape_error is thrown. NaN anywhere on the
// grid raises numeric_error with the step number.
RunResult run_simulation(const RunConfig& cfg, bool write_output);

struct CompareResult {
    double max_rel_diff_Q = 0.0;
    double max_rel_diff_F = 0.0;
    double max_rel_diff_G = 0.0;
    double max_rel_diff_E = 0.0;
    bool pass = false;
    std::string report_path;
};

// Grid solver vs particle oracle from the same initial condition; sup-over-t
// differences of Q, F, G, E normalized by the grid run's scales.
CompareResult run_compare(const RunConfig& cfg, bool write_output);

// Reads a snapshot, recomputes fields and prints one diagnostics block.
DiagnosticsRecord diagnose_snapshot(const std::string& path, std::ostream& out,
                                    double local_charge_radius = 2.0);

// CSV helpers shared by run/compare and the tests.
std::string csv_header();
std::string csv_row(const RunRow& row);

} // namespace vp1d

#endif
