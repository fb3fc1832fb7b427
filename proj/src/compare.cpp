#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "vp1d/errors.hpp"
#include "vp1d/field.hpp"
#include "vp1d/integrator.hpp"
#include "vp1d/pic_oracle.hpp"
#include "vp1d/run.hpp"

namespace vp1d {

namespace {

double l1_diff(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::abs(a[i] - b[i]);
    return s * dx;
}

} // namespace

CompareResult run_compare(const RunConfig& cfg, bool write_output) {
    cfg.validate();
    if (cfg.oracle_particles < 1)
        throw config_error("compare requires oracle_particles >= 1");

    SystemState state = build_initial_state(cfg);
    ParticleEnsemble ens = sample(state, cfg.oracle_particles, cfg.seed);

    const double dt = cfg.effective_dt();
    const long n_steps = cfg.compare_t_final > 0.0
                             ? static_cast<long>(std::ceil(cfg.compare_t_final / dt - 1e-9))
                             : 0;

    StepParams sp;
    sp.dt = dt;
    sp.interpolation = cfg.interpolation;
    sp.support_tol = cfg.support_tol;
    sp.renormalize = cfg.renormalize;

    const double dx = cfg.grid.dx();
    const double mass0 = species_mass(state.f, state.grid);

    double max_dF = 0.0, max_dG = 0.0, max_dE = 0.0, max_dQ = 0.0;
    double max_Q = 0.0, max_E = 0.0;

    for (long s = 0; s <= n_steps; ++s) {
        if (s > 0) {
            state = step(state, sp); // throws support_escape_error if data hits the box
            pic_step(ens, dt, cfg.model);
        }
        if ((s % cfg.compare_cadence) != 0 && s != n_steps)
            continue;

        const MomentProfile m = compute_moments(state);
        const std::vector<double> rho = compute_rho(m);
        const std::vector<double> E = compute_E(rho, state.grid);
        double Qg = 0.0;
        double Eg_inf = 0.0;
        for (int i = 0; i < state.grid.n_x; ++i) {
            Qg += E[i] * E[i] * (m.F[i] + m.G[i]);
            Eg_inf = std::max(Eg_inf, std::abs(E[i]));
        }
        Qg *= dx;

        const PicGridView pv = pic_bin_to_grid(ens, state.grid);
        max_dF = std::max(max_dF, l1_diff(m.F, pv.F, dx));
        max_dG = std::max(max_dG, l1_diff(m.G, pv.G, dx));
        double dE = 0.0;
        for (int i = 0; i < state.grid.n_x; ++i)
            dE = std::max(dE, std::abs(E[i] - pv.E[i]));
        max_dE = std::max(max_dE, dE);
        max_dQ = std::max(max_dQ, std::abs(Qg - pv.Q));
        max_Q = std::max(max_Q, Qg);
        max_E = std::max(max_E, Eg_inf);
    }

    CompareResult cr;
    cr.max_rel_diff_F = max_dF / mass0;
    cr.max_rel_diff_G = max_dG / mass0;
    cr.max_rel_diff_E = max_E > 0.0 ? max_dE / max_E : max_dE;
    cr.max_rel_diff_Q = max_Q > 0.0 ? max_dQ / max_Q : max_dQ;
    cr.pass = cr.max_rel_diff_F <= cfg.compare_tol_F && cr.max_rel_diff_G <= cfg.compare_tol_G &&
              cr.max_rel_diff_E <= cfg.compare_tol_E && cr.max_rel_diff_Q <= cfg.compare_tol_Q;

    if (write_output) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.output_dir);
        cr.report_path = (fs::path(cfg.output_dir) / "compare_report.txt").string();
        std::ofstream out(cr.report_path, std::ios::binary);
        if (!out)
            throw config_error("cannot write " + cr.report_path);
        char buf[64];
        auto line = [&](const char* key, double v) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << key << " = " << buf << '\n';
        };
        out << "particles_per_species = " << cfg.oracle_particles << '\n';
        line("t_final", cfg.compare_t_final);
        line("max_rel_diff_Q", cr.max_rel_diff_Q);
        line("max_rel_diff_F", cr.max_rel_diff_F);
        line("max_rel_diff_G", cr.max_rel_diff_G);
        line("max_rel_diff_E", cr.max_rel_diff_E);
        line("tol_Q", cfg.compare_tol_Q);
        line("tol_F", cfg.compare_tol_F);
        line("tol_G", cfg.compare_tol_G);
        line("tol_E", cfg.compare_tol_E);
        out << "status = " << (cr.pass ? "pass" : "fail") << '\n';
    }
    return cr;
}

} // namespace vp1d
