#ifndef VP1D_INTEGRATOR_HPP
#define VP1D_INTEGRATOR_HPP

#include <string>
#include <vector>

#include "vp1d/phase_space.hpp"

namespace vp1d {

enum class Interpolation { linear, cubic_clipped };

struct StepParams {
    double dt = 0.0;
    Interpolation interpolation = Interpolation::linear;
    double support_tol = 1e-8; // mass fraction allowed in the boundary cells
    // After clipping a cubic update, rescale each 1D profile back to its
    // conservative (unclipped) mass. Off by default: plain cubic-clipped is
    // slightly mass-lossy, matching its documentation.
    bool renormalize = false;
};

// Shift every v-row by transport_speed(v)*dt via backward-characteristic
// interpolation; values outside the domain are zero (open outflow boundary).
// Linear interpolation preserves positivity and mass up to boundary outflow;
// cubic is clipped at zero (and optionally renormalized).
SpeciesState advect_x(const SpeciesState& s, double dt, ModelKind model, const PhaseGrid& grid,
                      Interpolation interp = Interpolation::linear, bool renormalize = false);

// Shift every x-column by charge_sign * E[i] * dt: f accelerates with +E,
// g with -E.
SpeciesState advect_v(const SpeciesState& s, const std::vector<double>& E, double dt,
                      const PhaseGrid& grid, Interpolation interp = Interpolation::linear,
                      bool renormalize = false);

// One Strang-split step: half x-advection of both species, field recomputed
// from the mid-step state, full v-advection, half x-advection. Second order
// in dt for smooth data. t advances by p.dt.
SystemState step(const SystemState& state, const StepParams& p);

// True iff the mass in the outermost two cell layers (in x or v) of either
// species exceeds tol times that species' total mass.
bool support_escape(const SystemState& state, double tol);

struct SupportReport {
    bool escaped = false;
    std::string species;  // "f" or "g"
    std::string boundary; // "x_low", "x_high", "v_low", "v_high"
    double fraction = 0.0;
};

SupportReport support_escape_report(const SystemState& state, double tol);

} // namespace vp1d

#endif
