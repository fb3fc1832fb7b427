#ifndef VP1D_PHASE_SPACE_HPP
#define VP1D_PHASE_SPACE_HPP

#include <cstddef>
#include <vector>

namespace vp1d {

enum class ModelKind { classical, relativistic };

// Cell-centered phase-space grid: x in [x_min, x_max], v in [-v_max, v_max].
// The v-grid is symmetric about 0 by construction (reflecting a cell center
// j -> n_v-1-j flips the sign of v exactly).
struct PhaseGrid {
    double x_min = -1.0;
    double x_max = 1.0;
    int n_x = 1;
    double v_max = 1.0;
    int n_v = 1;

    double dx() const { return (x_max - x_min) / n_x; }
    double dv() const { return 2.0 * v_max / n_v; }
    double x_center(int i) const { return x_min + (i + 0.5) * dx(); }
    double v_center(int j) const { return -v_max + (j + 0.5) * dv(); }
    std::size_t cells() const { return static_cast<std::size_t>(n_x) * n_v; }

    // Throws config_error on non-positive extents or counts.
    void validate() const;
};

// Gridded phase-space number density of one species, stored v-major:
// values[j*n_x + i] is the density at (x_i, v_j), units 1/(length*momentum).
struct SpeciesState {
    std::vector<double> values;
    double mass = 1.0;     // particle mass m > 0
    int charge_sign = +1;  // +1 or -1

    double value(int i, int j, const PhaseGrid& g) const { return values[static_cast<std::size_t>(j) * g.n_x + i]; }
    double& value(int i, int j, const PhaseGrid& g) { return values[static_cast<std::size_t>(j) * g.n_x + i]; }
};

struct SystemState {
    SpeciesState f;  // mass 1, charge +1
    SpeciesState g;  // mass m, charge -1
    double t = 0.0;
    PhaseGrid grid;
    ModelKind model = ModelKind::classical;
};

// Particle velocity as a function of momentum v: v/mass in the classical
// model, v/sqrt(mass^2 + v^2) in the relativistic one (magnitude < 1).
// Throws std::invalid_argument for mass <= 0.
double transport_speed(double v, ModelKind model, double mass);

// One compactly supported C^1 bump per species:
//   amplitude * cos^2(pi (x-x_center) / (2 x_halfwidth))
//             * cos^2(pi (v-v_center) / (2 v_halfwidth))
// inside the product of the half-open support intervals, exactly zero outside.
// Closed form: integral over phase space = amplitude * x_halfwidth * v_halfwidth.
struct BumpParams {
    double x_center = 0.0;
    double x_halfwidth = 1.0;
    double v_center = 0.0;
    double v_halfwidth = 1.0;
    double amplitude = 1.0;
};

struct TwoBumpParams {
    BumpParams f;
    BumpParams g;
    double mass_g = 1.0;
};

// Builds the initial state and rescales g so that the two species carry the
// same total mass to machine precision. Bump supports must lie strictly
// inside the grid; a support touching the boundary throws config_error.
SystemState init_two_bump(const PhaseGrid& grid, const TwoBumpParams& params,
                          ModelKind model = ModelKind::classical);

// Midpoint-rule total mass of one species, sum f dv dx.
double species_mass(const SpeciesState& s, const PhaseGrid& grid);

} // namespace vp1d

#endif
