#include "vp1d/phase_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "vp1d/errors.hpp"

namespace vp1d {

void PhaseGrid::validate() const {
    if (!(x_max > x_min))
        throw config_error("grid: x_max must exceed x_min");
    if (n_x < 1 || n_v < 1)
        throw config_error("grid: n_x and n_v must be positive");
    if (!(v_max > 0.0))
        throw config_error("grid: v_max must be positive");
}

double transport_speed(double v, ModelKind model, double mass) {
    if (!(mass > 0.0))
        throw std::invalid_argument("transport_speed: mass must be positive");
    if (model == ModelKind::classical)
        return v / mass;
    return v / std::sqrt(mass * mass + v * v);
}

namespace {

// cos^2 cutoff: 1 at u = 0, exactly 0 for |u| >= 1, C^1 at the edges.
double cos2_profile(double u) {
    if (std::abs(u) >= 1.0)
        return 0.0;
    const double c = std::cos(0.5 * M_PI * u);
    return c * c;
}

void fill_bump(SpeciesState& s, const BumpParams& b, const PhaseGrid& g) {
    s.values.assign(g.cells(), 0.0);
    for (int j = 0; j < g.n_v; ++j) {
        const double pv = cos2_profile((g.v_center(j) - b.v_center) / b.v_halfwidth);
        if (pv == 0.0)
            continue;
        for (int i = 0; i < g.n_x; ++i) {
            const double px = cos2_profile((g.x_center(i) - b.x_center) / b.x_halfwidth);
            if (px != 0.0)
                s.value(i, j, g) = b.amplitude * px * pv;
        }
    }
}

void check_support(const BumpParams& b, const PhaseGrid& g, const std::string& name) {
    if (!(b.x_halfwidth > 0.0) || !(b.v_halfwidth > 0.0))
        throw config_error("init_two_bump: " + name + " halfwidths must be positive");
    if (!(b.amplitude > 0.0))
        throw config_error("init_two_bump: " + name + " amplitude must be positive");
    if (b.x_center - b.x_halfwidth <= g.x_min || b.x_center + b.x_halfwidth >= g.x_max)
        throw config_error("init_two_bump: " + name + " x-support touches the grid boundary");
    if (b.v_center - b.v_halfwidth <= -g.v_max || b.v_center + b.v_halfwidth >= g.v_max)
        throw config_error("init_two_bump: " + name + " v-support touches the grid boundary");
}

} // namespace

SystemState init_two_bump(const PhaseGrid& grid, const TwoBumpParams& params, ModelKind model) {
    grid.validate();
    if (!(params.mass_g > 0.0))
        throw config_error("init_two_bump: mass_g must be positive");
    check_support(params.f, grid, "f");
    check_support(params.g, grid, "g");

    SystemState state;
    state.grid = grid;
    state.model = model;
    state.t = 0.0;

    state.f.mass = 1.0;
    state.f.charge_sign = +1;
    fill_bump(state.f, params.f, grid);

    state.g.mass = params.mass_g;
    state.g.charge_sign = -1;
    fill_bump(state.g, params.g, grid);

    // Enforce the neutrality condition by rescaling g.
    const double mf = species_mass(state.f, grid);
    const double mg = species_mass(state.g, grid);
    if (!(mf > 0.0) || !(mg > 0.0))
        throw config_error("init_two_bump: a species has no mass on the grid (support too "
                           "narrow for the resolution?)");
    const double scale = mf / mg;
    for (double& v : state.g.values)
        v *= scale;

    return state;
}

double species_mass(const SpeciesState& s, const PhaseGrid& grid) {
    double sum = 0.0;
    for (double v : s.values)
        sum += v;
    return sum * grid.dx() * grid.dv();
}

} // namespace vp1d
