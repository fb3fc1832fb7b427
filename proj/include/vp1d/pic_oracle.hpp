#ifndef VP1D_PIC_ORACLE_HPP
#define VP1D_PIC_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "vp1d/phase_space.hpp"

namespace vp1d {

// Equal-weight macro-particle ensemble sampled from a grid state. In 1D the
// field at a particle is exactly half the signed charge difference between
// the particles to its left and to its right, so no deposition grid is used
// for the dynamics.
struct ParticleEnsemble {
    struct Species {
        std::vector<double> x; // positions
        std::vector<double> p; // momenta
        double weight = 0.0;   // per particle; weight * count = species mass
        double mass = 1.0;
        int charge_sign = +1;
    };

    Species f;
    Species g;
    ModelKind model = ModelKind::classical;
};

// Deterministic stratified (systematic) sampling proportional to the grid
// densities; g weights are set equal to f weights so neutrality is exact.
// Throws std::invalid_argument for N < 1 or an empty species.
ParticleEnsemble sample(const SystemState& state, int n_per_species, std::uint64_t seed);

// E at every particle (f block first, then g): half the signed weight
// strictly left minus strictly right; coincident particles split their
// cohort symmetrically and never feel their own charge.
std::vector<double> field_at_particles(const ParticleEnsemble& ens);

// Leapfrog kick-drift-kick; drift speed is the model's transport speed of
// the mid-step momentum.
void pic_step(ParticleEnsemble& ens, double dt, ModelKind model);

// Grid projections and scalar diagnostics for cross-method comparison.
struct PicGridView {
    std::vector<double> F;
    std::vector<double> G;
    std::vector<double> rho;
    std::vector<double> E;
    double Q = 0.0;
};

PicGridView pic_bin_to_grid(const ParticleEnsemble& ens, const PhaseGrid& grid);

double pic_total_momentum(const ParticleEnsemble& ens);

// Kinetic energy plus the pairwise |x_i - x_j| field energy, which equals
// (1/2) int E^2 dx for a neutral ensemble.
double pic_total_energy(const ParticleEnsemble& ens);

} // namespace vp1d

#endif
