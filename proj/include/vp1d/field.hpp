#ifndef VP1D_FIELD_HPP
#define VP1D_FIELD_HPP

#include <vector>

#include "vp1d/phase_space.hpp"

namespace vp1d {

// Velocity moments of both species on the x-grid, midpoint quadrature in v.
struct MomentProfile {
    std::vector<double> F;               // int f dv
    std::vector<double> G;               // int g dv
    std::vector<double> first_moment_f;  // int v f dv
    std::vector<double> first_moment_g;  // int v g dv
    std::vector<double> second_moment_f; // int v^2 f dv
    std::vector<double> second_moment_g; // int v^2 g dv
    std::vector<double> e;               // kinetic-energy density int v^2 (f+g) dv
    std::vector<double> abs_moment_f;    // int |v| f dv
    std::vector<double> abs_moment_g;    // int |v| g dv
};

struct FieldState {
    std::vector<double> rho; // charge density int (f-g) dv
    std::vector<double> E;   // electric field
    std::vector<double> j;   // current density, transport-speed first moment
};

MomentProfile compute_moments(const SystemState& state);

// rho = F - G. Throws std::invalid_argument on length mismatch.
std::vector<double> compute_rho(const MomentProfile& m);

// Free-space field E[i] = C[i] - C_total/2 with C[i] = sum_{k<=i} rho[k] dx,
// i.e. E(x) = (int_{-inf}^x rho - int_x^inf rho) / 2 with the cumulative sum
// carried to the right edge of cell i. The convention makes the discrete
// Gauss law (E[i+1]-E[i])/dx = rho[i+1] exact. Works for non-neutral rho.
std::vector<double> compute_E(const std::vector<double>& rho, const PhaseGrid& grid);

// Current j = int u_f(v) f dv - int u_g(v) g dv with u the per-species
// transport speed, so continuity d_t rho + d_x j = 0 holds in both models.
std::vector<double> compute_current(const SystemState& state);

// Convenience bundle: moments -> rho -> E -> j for one state.
FieldState compute_field(const SystemState& state);
FieldState compute_field(const SystemState& state, const MomentProfile& m);

} // namespace vp1d

#endif
