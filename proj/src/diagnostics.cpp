#include "vp1d/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vp1d {

namespace {

// Kinetic energy: int v^2/(2m) s dv dx classically, int (sqrt(m^2+v^2)-m) s
// dv dx in the relativistic model.
double kinetic_energy(const SpeciesState& s, const PhaseGrid& g, ModelKind model) {
    const int nx = g.n_x;
    double sum = 0.0;
    for (int j = 0; j < g.n_v; ++j) {
        const double v = g.v_center(j);
        const double w = (model == ModelKind::classical)
                             ? 0.5 * v * v / s.mass
                             : std::sqrt(s.mass * s.mass + v * v) - s.mass;
        const double* row = s.values.data() + static_cast<std::size_t>(j) * nx;
        double rowsum = 0.0;
        for (int i = 0; i < nx; ++i)
            rowsum += row[i];
        sum += w * rowsum;
    }
    return sum * g.dx() * g.dv();
}

// Transport-speed first moments int u(v) s dv per x, one species.
std::vector<double> speed_moment(const SpeciesState& s, const PhaseGrid& g, ModelKind model) {
    const int nx = g.n_x;
    std::vector<double> out(nx, 0.0);
    for (int j = 0; j < g.n_v; ++j) {
        const double u = transport_speed(g.v_center(j), model, s.mass);
        const double* row = s.values.data() + static_cast<std::size_t>(j) * nx;
        for (int i = 0; i < nx; ++i)
            out[i] += u * row[i];
    }
    const double dv = g.dv();
    for (double& x : out)
        x *= dv;
    return out;
}

double grid_min(const SpeciesState& s) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : s.values)
        m = std::min(m, v);
    return m;
}

} // namespace

DiagnosticsRecord record(const SystemState& state, double local_charge_radius) {
    if (!(local_charge_radius > 0.0))
        throw std::invalid_argument("record: local charge radius must be positive");

    const PhaseGrid& g = state.grid;
    const int nx = g.n_x;
    const double dx = g.dx();

    const MomentProfile m = compute_moments(state);
    const std::vector<double> rho = compute_rho(m);
    const std::vector<double> E = compute_E(rho, g);
    const std::vector<double> ju_f = speed_moment(state.f, g, state.model);
    const std::vector<double> ju_g = speed_moment(state.g, g, state.model);

    DiagnosticsRecord r;
    r.t = state.t;

    double rho_sq = 0.0;
    double L74_base = 0.0;
    for (int i = 0; i < nx; ++i) {
        const double FG = m.F[i] + m.G[i];
        const double E2 = E[i] * E[i];
        r.Q += E2 * FG;
        r.E_inf = std::max(r.E_inf, std::abs(E[i]));
        r.L4 += m.F[i] * m.F[i] * m.F[i] * m.F[i] + m.G[i] * m.G[i] * m.G[i] * m.G[i];
        L74_base += std::pow(m.F[i], 1.75) + std::pow(m.G[i], 1.75);
        if (std::abs(g.x_center(i)) < local_charge_radius) {
            r.local_charge_F += m.F[i];
            r.local_charge_G += m.G[i];
        }
        r.kdefect_f += m.F[i] * m.second_moment_f[i] -
                       m.first_moment_f[i] * m.first_moment_f[i];
        r.kdefect_g += m.G[i] * m.second_moment_g[i] -
                       m.first_moment_g[i] * m.first_moment_g[i];
        r.mass_f += m.F[i];
        r.mass_g += m.G[i];
        rho_sq += rho[i] * rho[i];

        const double j = ju_f[i] - ju_g[i];
        r.dQdt += -2.0 * j * E[i] * FG + 2.0 * rho[i] * E[i] * (ju_f[i] + ju_g[i]);
    }
    r.Q *= dx;
    r.L4 *= dx;
    L74_base *= dx;
    r.L74 = L74_base * L74_base * L74_base * L74_base;
    r.local_charge_F *= dx;
    r.local_charge_G *= dx;
    r.kdefect_f *= dx;
    r.kdefect_g *= dx;
    r.mass_f *= dx;
    r.mass_g *= dx;
    rho_sq *= dx;
    r.dQdt *= dx;
    r.E_inf_cubed_bound = 3.0 * r.Q;

    double field_energy = 0.0;
    for (int i = 0; i < nx; ++i)
        field_energy += E[i] * E[i];
    field_energy *= 0.5 * dx;
    r.energy_total = kinetic_energy(state.f, g, state.model) +
                     kinetic_energy(state.g, g, state.model) + field_energy;

    // Discrete Gauss law, relative to the charge-density scale.
    double rho_inf = 0.0;
    for (int i = 0; i < nx; ++i)
        rho_inf = std::max(rho_inf, std::abs(rho[i]));
    double mismatch = 0.0;
    for (int i = 0; i + 1 < nx; ++i)
        mismatch = std::max(mismatch, std::abs((E[i + 1] - E[i]) / dx - rho[i + 1]));
    r.gauss_mismatch = rho_inf > 0.0 ? mismatch / rho_inf : mismatch;

    // Telescoping the cumulative sum bounds |E|^3 by 3Q plus boundary and
    // one-sided quadrature terms; violations beyond round-off are bugs.
    r.eq4_allowance = std::abs(E[0]) * std::abs(E[0]) * std::abs(E[0]) +
                      3.0 * r.E_inf * dx * rho_sq;

    r.min_f = grid_min(state.f);
    r.min_g = grid_min(state.g);
    return r;
}

double kdefect_bruteforce(const SpeciesState& s, const PhaseGrid& grid) {
    const int nx = grid.n_x;
    const int nv = grid.n_v;
    const double dv = grid.dv();
    std::vector<double> column(nv);
    double total = 0.0;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nv; ++j)
            column[j] = s.values[static_cast<std::size_t>(j) * nx + i];
        double cell = 0.0;
        for (int j = 0; j < nv; ++j) {
            if (column[j] == 0.0)
                continue;
            const double vj = grid.v_center(j);
            double inner = 0.0;
            for (int l = 0; l < nv; ++l) {
                const double d = grid.v_center(l) - vj;
                inner += d * d * column[l];
            }
            cell += column[j] * inner;
        }
        total += cell;
    }
    return 0.5 * total * dv * dv * grid.dx();
}

namespace {

struct VirialTerms {
    double M = 0.0;
    double A_f = 0.0, A_g = 0.0;
    double B_f = 0.0, B_g = 0.0;
    double L = 0.0;
};

// Cumulative integral carried to the cell center (half of the own cell):
// second-order consistent with int_{-inf}^{x_i}, which the residual needs.
std::vector<double> cumulative_center(const std::vector<double>& a, double dx) {
    std::vector<double> c(a.size());
    double run = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[i] = run + 0.5 * a[i] * dx;
        run += a[i] * dx;
    }
    return c;
}

VirialTerms virial_terms(const SystemState& state) {
    const PhaseGrid& g = state.grid;
    const int nx = g.n_x;
    const double dx = g.dx();
    const MomentProfile m = compute_moments(state);

    const std::vector<double> cumF = cumulative_center(m.F, dx);
    const std::vector<double> cumG = cumulative_center(m.G, dx);

    VirialTerms t;
    double rho_total = 0.0;
    for (int i = 0; i < nx; ++i)
        rho_total += (m.F[i] - m.G[i]) * dx;
    for (int i = 0; i < nx; ++i) {
        t.M += m.first_moment_f[i] * cumF[i] + m.first_moment_g[i] * cumG[i];
        t.A_f += m.first_moment_f[i] * m.first_moment_f[i];
        t.A_g += m.first_moment_g[i] * m.first_moment_g[i];
        t.B_f += m.F[i] * m.second_moment_f[i];
        t.B_g += m.G[i] * m.second_moment_g[i];
        const double Ec = cumF[i] - cumG[i] - 0.5 * rho_total;
        t.L += Ec * Ec * (m.F[i] + m.G[i]);
    }
    t.M *= dx;
    t.A_f *= dx;
    t.A_g *= dx;
    t.B_f *= dx;
    t.B_g *= dx;
    t.L *= -0.25 * dx;
    return t;
}

} // namespace

VirialLedger audit_virial(const SystemState& prev, const SystemState& next, double dt) {
    if (prev.model != ModelKind::classical || next.model != ModelKind::classical)
        throw std::invalid_argument("audit_virial: the identity is derived for the classical "
                                    "model only");
    if (!(dt > 0.0))
        throw std::invalid_argument("audit_virial: dt must be positive");

    const VirialTerms a = virial_terms(prev);
    const VirialTerms b = virial_terms(next);

    VirialLedger led;
    led.M = 0.5 * (a.M + b.M);
    led.dMdt = (b.M - a.M) / dt;
    led.A_f = 0.5 * (a.A_f + b.A_f);
    led.A_g = 0.5 * (a.A_g + b.A_g);
    led.B_f = 0.5 * (a.B_f + b.B_f);
    led.B_g = 0.5 * (a.B_g + b.B_g);
    led.L = 0.5 * (a.L + b.L);
    led.residual = led.dMdt + (led.A_f - led.B_f) + (led.A_g - led.B_g) + led.L;
    return led;
}

MomentInterpolationReport moment_interpolation_check(const MomentProfile& m, double e_floor) {
    MomentInterpolationReport rep;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] <= e_floor)
            continue;
        ++rep.cells_evaluated;
        const double e13 = std::cbrt(m.e[i]);
        const double e23 = e13 * e13;
        rep.max_ratio_abs_moment =
            std::max(rep.max_ratio_abs_moment, (m.abs_moment_f[i] + m.abs_moment_g[i]) / e23);
        rep.max_ratio_F = std::max(rep.max_ratio_F, std::max(m.F[i], m.G[i]) / e13);
    }
    return rep;
}

L4SplitReport l4_split_check(const MomentProfile& m, const PhaseGrid& grid, double floor_frac) {
    (void)grid;
    L4SplitReport rep;
    double Fmax = 0.0, Gmax = 0.0;
    for (std::size_t i = 0; i < m.F.size(); ++i) {
        Fmax = std::max(Fmax, m.F[i]);
        Gmax = std::max(Gmax, m.G[i]);
    }
    auto ratio = [](double dens, double dens2, double dens1) {
        // F^4 / k with k = 2 (F int v^2 f - (int v f)^2)
        const double k = 2.0 * (dens * dens2 - dens1 * dens1);
        const double f4 = dens * dens * dens * dens;
        if (k <= 0.0)
            return f4 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        return f4 / k;
    };
    for (std::size_t i = 0; i < m.F.size(); ++i) {
        if (m.F[i] > floor_frac * Fmax)
            rep.max_ratio_f = std::max(
                rep.max_ratio_f, ratio(m.F[i], m.second_moment_f[i], m.first_moment_f[i]));
        if (m.G[i] > floor_frac * Gmax)
            rep.max_ratio_g = std::max(
                rep.max_ratio_g, ratio(m.G[i], m.second_moment_g[i], m.first_moment_g[i]));
    }
    return rep;
}

TimeIntegrals accumulate(TimeIntegrals ti, const DiagnosticsRecord& rec, double dt) {
    const double Einf3 = rec.E_inf * rec.E_inf * rec.E_inf;
    if (ti.primed) {
        if (!(dt > 0.0))
            throw std::invalid_argument("accumulate: dt must be positive");
        ti.int_Q += 0.5 * dt * (ti.prev_Q + rec.Q);
        ti.int_L4 += 0.5 * dt * (ti.prev_L4 + rec.L4);
        ti.int_L74 += 0.5 * dt * (ti.prev_L74 + rec.L74);
        ti.int_Einf3 += 0.5 * dt * (ti.prev_Einf3 + Einf3);
    }
    ti.primed = true;
    ti.prev_Q = rec.Q;
    ti.prev_L4 = rec.L4;
    ti.prev_L74 = rec.L74;
    ti.prev_Einf3 = Einf3;
    return ti;
}

} // namespace vp1d
