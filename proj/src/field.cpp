#include "vp1d/field.hpp"

#include <cmath>
#include <stdexcept>

namespace vp1d {

MomentProfile compute_moments(const SystemState& state) {
    const PhaseGrid& g = state.grid;
    const int nx = g.n_x;
    const double dv = g.dv();

    MomentProfile m;
    m.F.assign(nx, 0.0);
    m.G.assign(nx, 0.0);
    m.first_moment_f.assign(nx, 0.0);
    m.first_moment_g.assign(nx, 0.0);
    m.second_moment_f.assign(nx, 0.0);
    m.second_moment_g.assign(nx, 0.0);
    m.e.assign(nx, 0.0);
    m.abs_moment_f.assign(nx, 0.0);
    m.abs_moment_g.assign(nx, 0.0);

    // v-major storage: accumulate one contiguous x-row per v node.
    for (int j = 0; j < g.n_v; ++j) {
        const double v = g.v_center(j);
        const double v2 = v * v;
        const double av = std::abs(v);
        const double* f = state.f.values.data() + static_cast<std::size_t>(j) * nx;
        const double* h = state.g.values.data() + static_cast<std::size_t>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            m.F[i] += f[i];
            m.first_moment_f[i] += v * f[i];
            m.second_moment_f[i] += v2 * f[i];
            m.abs_moment_f[i] += av * f[i];
            m.G[i] += h[i];
            m.first_moment_g[i] += v * h[i];
            m.second_moment_g[i] += v2 * h[i];
            m.abs_moment_g[i] += av * h[i];
        }
    }
    for (int i = 0; i < nx; ++i) {
        m.F[i] *= dv;
        m.G[i] *= dv;
        m.first_moment_f[i] *= dv;
        m.first_moment_g[i] *= dv;
        m.second_moment_f[i] *= dv;
        m.second_moment_g[i] *= dv;
        m.abs_moment_f[i] *= dv;
        m.abs_moment_g[i] *= dv;
        m.e[i] = m.second_moment_f[i] + m.second_moment_g[i];
    }
    return m;
}

std::vector<double> compute_rho(const MomentProfile& m) {
    if (m.F.size() != m.G.size())
        throw std::invalid_argument("compute_rho: F and G length mismatch");
    std::vector<double> rho(m.F.size());
    for (std::size_t i = 0; i < rho.size(); ++i)
        rho[i] = m.F[i] - m.G[i];
    return rho;
}

std::vector<double> compute_E(const std::vector<double>& rho, const PhaseGrid& grid) {
    const double dx = grid.dx();
    std::vector<double> E(rho.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        cum += rho[i] * dx;
        E[i] = cum;
    }
    // E = C - C_total/2 is the symmetric half-difference of left and right
    // charge; for neutral rho the total vanishes and E is zero at both ends.
    const double half_total = 0.5 * cum;
    for (double& e : E)
        e -= half_total;
    return E;
}

std::vector<double> compute_current(const SystemState& state) {
    const PhaseGrid& g = state.grid;
    const int nx = g.n_x;
    std::vector<double> j(nx, 0.0);
    for (int jv = 0; jv < g.n_v; ++jv) {
        const double v = g.v_center(jv);
        const double uf = transport_speed(v, state.model, state.f.mass);
        const double ug = transport_speed(v, state.model, state.g.mass);
        const double* f = state.f.values.data() + static_cast<std::size_t>(jv) * nx;
        const double* h = state.g.values.data() + static_cast<std::size_t>(jv) * nx;
        for (int i = 0; i < nx; ++i)
            j[i] += uf * f[i] - ug * h[i];
    }
    const double dv = g.dv();
    for (double& x : j)
        x *= dv;
    return j;
}

FieldState compute_field(const SystemState& state, const MomentProfile& m) {
    FieldState fs;
    fs.rho = compute_rho(m);
    fs.E = compute_E(fs.rho, state.grid);
    fs.j = compute_current(state);
    return fs;
}

FieldState compute_field(const SystemState& state) {
    return compute_field(state, compute_moments(state));
}

} // namespace vp1d
