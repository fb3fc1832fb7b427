#include "vp1d/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "vp1d/errors.hpp"
#include "vp1d/field.hpp"
#include "vp1d/integrator.hpp"
#include "vp1d/snapshot.hpp"

namespace vp1d {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x))
            return false;
    return true;
}

long step_count(double t_final, double dt) {
    if (t_final <= 0.0)
        return 0;
    return static_cast<long>(std::ceil(t_final / dt - 1e-9));
}

} // namespace

std::string csv_header() {
    return "t,Q,E_inf,E_inf_cubed,three_Q,L4,L74,local_charge_F,local_charge_G,"
           "kdefect_f,kdefect_g,mass_f,mass_g,energy_total,dQdt_formula,dQdt_fd,"
           "int_Q,int_L4,int_Einf3,virial_residual";
}

std::string csv_row(const RunRow& row) {
    const DiagnosticsRecord& r = row.rec;
    std::string s;
    s.reserve(512);
    s += fmt(r.t);
    s += ',';
    s += fmt(r.Q);
    s += ',';
    s += fmt(r.E_inf);
    s += ',';
    s += fmt(r.E_inf * r.E_inf * r.E_inf);
    s += ',';
    s += fmt(r.E_inf_cubed_bound);
    s += ',';
    s += fmt(r.L4);
    s += ',';
    s += fmt(r.L74);
    s += ',';
    s += fmt(r.local_charge_F);
    s += ',';
    s += fmt(r.local_charge_G);
    s += ',';
    s += fmt(r.kdefect_f);
    s += ',';
    s += fmt(r.kdefect_g);
    s += ',';
    s += fmt(r.mass_f);
    s += ',';
    s += fmt(r.mass_g);
    s += ',';
    s += fmt(r.energy_total);
    s += ',';
    s += fmt(r.dQdt);
    s += ',';
    s += fmt(row.dQdt_fd);
    s += ',';
    s += fmt(row.int_Q);
    s += ',';
    s += fmt(row.int_L4);
    s += ',';
    s += fmt(row.int_Einf3);
    s += ',';
    s += fmt(row.audited ? row.ledger.residual : 0.0);
    return s;
}

SystemState build_initial_state(const RunConfig& cfg) {
    TwoBumpParams p;
    p.f = cfg.bump_f;
    p.g = cfg.bump_g;
    p.mass_g = cfg.mass_g;
    return init_two_bump(cfg.grid, p, cfg.model);
}

namespace {

void write_csv(const RunConfig& cfg, const std::vector<RunRow>& trace, long n_steps,
               std::string& csv_path) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    csv_path = (fs::path(cfg.output_dir) / "timeseries.csv").string();
    std::ofstream out(csv_path, std::ios::binary); // binary: byte-stable newlines
    if (!out)
        throw config_error("cannot write " + csv_path);
    out << csv_header() << '\n';
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const bool cadence_row = (static_cast<long>(k) % cfg.cadence) == 0;
        const bool last_row = static_cast<long>(k) == n_steps;
        if (cadence_row || last_row)
            out << csv_row(trace[k]) << '\n';
    }
}

void fill_dqdt_fd(std::vector<RunRow>& trace, double dt) {
    const std::size_t n = trace.size();
    if (n < 2)
        return;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0)
            trace[k].dQdt_fd = (trace[1].rec.Q - trace[0].rec.Q) / dt;
        else if (k + 1 == n)
            trace[k].dQdt_fd = (trace[k].rec.Q - trace[k - 1].rec.Q) / dt;
        else
            trace[k].dQdt_fd = (trace[k + 1].rec.Q - trace[k - 1].rec.Q) / (2.0 * dt);
    }
}

} // namespace

RunResult run_simulation(const RunConfig& cfg, bool write_output) {
    cfg.validate();

    RunResult res;
    SystemState state = build_initial_state(cfg);
    const double dt = cfg.effective_dt();
    const long n_steps = step_count(cfg.t_final, dt);

    StepParams sp;
    sp.dt = dt;
    sp.interpolation = cfg.interpolation;
    sp.support_tol = cfg.support_tol;
    sp.renormalize = cfg.renormalize;

    res.summary.dt = dt;
    res.summary.n_steps = n_steps;
    res.trace.reserve(n_steps + 1);

    TimeIntegrals ti;
    SystemState prev = state;

    auto flush = [&]() {
        fill_dqdt_fd(res.trace, dt);
        if (write_output)
            write_csv(cfg, res.trace, n_steps, res.csv_path);
    };

    for (long s = 0; s <= n_steps; ++s) {
        if (s > 0) {
            prev = std::move(state);
            try {
                state = step(prev, sp);
            } catch (const support_escape_error& e) {
                flush();
                throw support_escape_error(e.what(), e.time, s);
            }
        }

        if (!all_finite(state.f.values) || !all_finite(state.g.values)) {
            flush();
            char msg[128];
            std::snprintf(msg, sizeof msg, "non-finite value on the grid at step %ld (t = %.6g)",
                          s, state.t);
            throw numeric_error(msg, s);
        }

        RunRow row;
        row.rec = record(state, cfg.local_charge_radius);
        ti = accumulate(ti, row.rec, dt);
        row.int_Q = ti.int_Q;
        row.int_L4 = ti.int_L4;
        row.int_L74 = ti.int_L74;
        row.int_Einf3 = ti.int_Einf3;

        const bool cadence_row = (s % cfg.cadence) == 0 || s == n_steps;
        if (s > 0 && cadence_row && cfg.model == ModelKind::classical) {
            row.ledger = audit_virial(prev, state, dt);
            row.audited = true;
        }
        res.trace.push_back(row);

        // Run-health maxima against the t = 0 reference.
        RunSummary& sm = res.summary;
        const DiagnosticsRecord& r0 = res.trace.front().rec;
        const DiagnosticsRecord& r = row.rec;
        sm.max_gauss_rel = std::max(sm.max_gauss_rel, r.gauss_mismatch);
        const double e3 = r.E_inf * r.E_inf * r.E_inf;
        const double bound = r.E_inf_cubed_bound + r.eq4_allowance;
        sm.max_eq4_excess =
            std::max(sm.max_eq4_excess, (e3 - bound) / std::max(bound, 1e-300));
        sm.max_mass_drift_f = std::max(sm.max_mass_drift_f,
                                       std::abs(r.mass_f - r0.mass_f) / r0.mass_f);
        sm.max_mass_drift_g = std::max(sm.max_mass_drift_g,
                                       std::abs(r.mass_g - r0.mass_g) / r0.mass_g);
        sm.max_energy_drift =
            std::max(sm.max_energy_drift, std::abs(r.energy_total - r0.energy_total) /
                                              std::max(std::abs(r0.energy_total), 1e-300));
        sm.max_neutrality_drift = std::max(sm.max_neutrality_drift,
                                           std::abs(r.mass_f - r.mass_g) / r.mass_f);
        sm.min_f = s == 0 ? r.min_f : std::min(sm.min_f, r.min_f);
        sm.min_g = s == 0 ? r.min_g : std::min(sm.min_g, r.min_g);
        sm.sup_E_inf = std::max(sm.sup_E_inf, r.E_inf);

        if (write_output && cfg.snapshot_every > 0 && (s % cfg.snapshot_every) == 0) {
            namespace fs = std::filesystem;
            fs::create_directories(cfg.output_dir);
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%06ld.bin", s);
            write_snapshot(state, (fs::path(cfg.output_dir) / name).string());
        }

        if (s == 0) {
            const SupportReport rep = support_escape_report(state, cfg.support_tol);
            if (rep.escaped) {
                flush();
                char msg[192];
                std::snprintf(msg, sizeof msg,
                              "support escape: species %s starts at the %s boundary",
                              rep.species.c_str(), rep.boundary.c_str());
                throw support_escape_error(msg, state.t, 0);
            }
        }
    }

    flush();
    res.final_state = std::move(state);
    return res;
}

DiagnosticsRecord diagnose_snapshot(const std::string& path, std::ostream& out,
                                    double local_charge_radius) {
    const SystemState state = read_snapshot(path);
    const DiagnosticsRecord r = record(state, local_charge_radius);
    const MomentProfile m = compute_moments(state);
    const MomentInterpolationReport mir = moment_interpolation_check(m);

    out << "snapshot = " << path << '\n'
        << "model = " << (state.model == ModelKind::classical ? "classical" : "relativistic")
        << '\n'
        << "grid = " << state.grid.n_x << " x " << state.grid.n_v << " on ["
        << fmt(state.grid.x_min) << ", " << fmt(state.grid.x_max) << "] x [-"
        << fmt(state.grid.v_max) << ", " << fmt(state.grid.v_max) << "]\n"
        << "t = " << fmt(r.t) << '\n'
        << "mass_f = " << fmt(r.mass_f) << '\n'
        << "mass_g = " << fmt(r.mass_g) << '\n'
        << "Q = " << fmt(r.Q) << '\n'
        << "E_inf = " << fmt(r.E_inf) << '\n'
        << "E_inf_cubed = " << fmt(r.E_inf * r.E_inf * r.E_inf) << '\n'
        << "three_Q = " << fmt(r.E_inf_cubed_bound) << '\n'
        << "L4 = " << fmt(r.L4) << '\n'
        << "L74 = " << fmt(r.L74) << '\n'
        << "local_charge_F = " << fmt(r.local_charge_F) << '\n'
        << "local_charge_G = " << fmt(r.local_charge_G) << '\n'
        << "kdefect_f = " << fmt(r.kdefect_f) << '\n'
        << "kdefect_g = " << fmt(r.kdefect_g) << '\n'
        << "energy_total = " << fmt(r.energy_total) << '\n'
        << "dQdt_formula = " << fmt(r.dQdt) << '\n'
        << "gauss_mismatch = " << fmt(r.gauss_mismatch) << '\n'
        << "max_ratio_absmoment_e23 = " << fmt(mir.max_ratio_abs_moment) << '\n'
        << "max_ratio_F_e13 = " << fmt(mir.max_ratio_F) << '\n';
    return r;
}

} // namespace vp1d
