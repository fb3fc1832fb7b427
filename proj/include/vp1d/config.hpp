#ifndef VP1D_CONFIG_HPP
#define VP1D_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "vp1d/integrator.hpp"
#include "vp1d/phase_space.hpp"

namespace vp1d {

// Flat key = value run configuration with [species.f] / [species.g] sections.
// Unknown keys, malformed lines and out-of-range values throw config_error
// naming the offending line.
struct RunConfig {
    ModelKind model = ModelKind::classical;
    double mass_g = 1.0;

    PhaseGrid grid{-10.0, 10.0, 128, 2.0, 128};

    double dt = 0.0;        // explicit step; 0 means derive from cfl
    double cfl = 0.25;      // dt = cfl * min(dx/u_max, dv/E_bound)
    double t_final = 1.0;

    Interpolation interpolation = Interpolation::linear;
    bool renormalize = false;
    double support_tol = 1e-8;

    BumpParams bump_f{0.0, 1.0, 0.0, 1.0, 1.0};
    BumpParams bump_g{0.0, 1.0, 0.0, 1.0, 1.0};

    int cadence = 1;                  // CSV row every k steps
    double local_charge_radius = 2.0; // R in int_{|x|<R} F dx
    int snapshot_every = 0;           // 0 = no snapshots

    std::string output_dir = "out";
    std::uint64_t seed = 1;

    // oracle comparison
    int oracle_particles = 0;     // 0 = compare unavailable
    double compare_t_final = 10.0;
    int compare_cadence = 10;
    double compare_tol_Q = 0.10;
    double compare_tol_F = 0.10;
    double compare_tol_G = 0.10;
    double compare_tol_E = 0.25;

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_stream(std::istream& in, const std::string& name);

    // Range checks that do not depend on parse context. Throws config_error.
    void validate() const;

    // Explicit dt if set, otherwise the cfl-derived default.
    double effective_dt() const;
};

} // namespace vp1d

#endif
