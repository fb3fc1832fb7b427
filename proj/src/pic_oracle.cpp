#include "vp1d/pic_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "vp1d/field.hpp"

namespace vp1d {

namespace {

// 53-bit uniform in [0,1); avoids std::uniform_real_distribution so that
// streams are identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ParticleEnsemble::Species sample_species(const SpeciesState& s, const PhaseGrid& g, int n,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double u0 = uniform01(rng);

    const double total = std::accumulate(s.values.begin(), s.values.end(), 0.0);
    if (!(total > 0.0))
        throw std::invalid_argument("sample: species has no mass");

    ParticleEnsemble::Species out;
    out.mass = s.mass;
    out.charge_sign = s.charge_sign;
    out.x.reserve(n);
    out.p.reserve(n);

    // Systematic (stratified) resampling over the cell-mass distribution:
    // one deterministic sweep, particle k targets (k + u0)/n of the total.
    const std::size_t cells = s.values.size();
    std::size_t c = 0;
    double cum = s.values[0];
    for (int k = 0; k < n; ++k) {
        const double target = (k + u0) / n * total;
        while (cum <= target && c + 1 < cells) {
            ++c;
            cum += s.values[c];
        }
        const int j = static_cast<int>(c / g.n_x);
        const int i = static_cast<int>(c % g.n_x);
        out.x.push_back(g.x_min + (i + uniform01(rng)) * g.dx());
        out.p.push_back(-g.v_max + (j + uniform01(rng)) * g.dv());
    }
    return out;
}

struct Tagged {
    double x;
    double sw; // signed weight
    std::uint32_t idx;
};

} // namespace

ParticleEnsemble sample(const SystemState& state, int n_per_species, std::uint64_t seed) {
    if (n_per_species < 1)
        throw std::invalid_argument("sample: need at least one particle per species");

    ParticleEnsemble ens;
    ens.model = state.model;
    ens.f = sample_species(state.f, state.grid, n_per_species, seed);
    ens.g = sample_species(state.g, state.grid, n_per_species,
                           seed + 0x9E3779B97F4A7C15ull);

    // Equal per-particle weights; g copies f's so neutrality is exact.
    ens.f.weight = species_mass(state.f, state.grid) / n_per_species;
    ens.g.weight = ens.f.weight;
    return ens;
}

std::vector<double> field_at_particles(const ParticleEnsemble& ens) {
    const std::size_t nf = ens.f.x.size();
    const std::size_t ng = ens.g.x.size();
    std::vector<Tagged> all;
    all.reserve(nf + ng);
    for (std::size_t k = 0; k < nf; ++k)
        all.push_back({ens.f.x[k], ens.f.charge_sign * ens.f.weight,
                       static_cast<std::uint32_t>(k)});
    for (std::size_t k = 0; k < ng; ++k)
        all.push_back({ens.g.x[k], ens.g.charge_sign * ens.g.weight,
                       static_cast<std::uint32_t>(nf + k)});

    std::sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
        return a.x != b.x ? a.x < b.x : a.idx < b.idx;
    });

    double total = 0.0;
    for (const Tagged& t : all)
        total += t.sw;

    // Cohorts of coincident particles split symmetrically and exclude their
    // own charge, which reduces to E = (prefix - suffix)/2 for every member.
    std::vector<double> E(nf + ng);
    double prefix = 0.0;
    std::size_t a = 0;
    while (a < all.size()) {
        std::size_t b = a;
        double cohort = 0.0;
        while (b < all.size() && all[b].x == all[a].x) {
            cohort += all[b].sw;
            ++b;
        }
        const double suffix = total - prefix - cohort;
        const double field = 0.5 * (prefix - suffix);
        for (std::size_t k = a; k < b; ++k)
            E[all[k].idx] = field;
        prefix += cohort;
        a = b;
    }
    return E;
}

namespace {

void kick(ParticleEnsemble& ens, const std::vector<double>& E, double half_dt) {
    const std::size_t nf = ens.f.x.size();
    for (std::size_t k = 0; k < nf; ++k)
        ens.f.p[k] += ens.f.charge_sign * E[k] * half_dt;
    for (std::size_t k = 0; k < ens.g.x.size(); ++k)
        ens.g.p[k] += ens.g.charge_sign * E[nf + k] * half_dt;
}

void drift(ParticleEnsemble& ens, double dt, ModelKind model) {
    for (std::size_t k = 0; k < ens.f.x.size(); ++k)
        ens.f.x[k] += transport_speed(ens.f.p[k], model, ens.f.mass) * dt;
    for (std::size_t k = 0; k < ens.g.x.size(); ++k)
        ens.g.x[k] += transport_speed(ens.g.p[k], model, ens.g.mass) * dt;
}

} // namespace

void pic_step(ParticleEnsemble& ens, double dt, ModelKind model) {
    if (!(dt > 0.0))
        throw std::invalid_argument("pic_step: dt must be positive");
    kick(ens, field_at_particles(ens), 0.5 * dt);
    drift(ens, dt, model);
    kick(ens, field_at_particles(ens), 0.5 * dt);
}

PicGridView pic_bin_to_grid(const ParticleEnsemble& ens, const PhaseGrid& grid) {
    PicGridView view;
    view.F.assign(grid.n_x, 0.0);
    view.G.assign(grid.n_x, 0.0);
    const double dx = grid.dx();

    auto bin = [&](const ParticleEnsemble::Species& s, std::vector<double>& dens) {
        for (double x : s.x) {
            const double u = (x - grid.x_min) / dx;
            if (u < 0.0 || u >= grid.n_x)
                continue;
            dens[static_cast<int>(u)] += s.weight / dx;
        }
    };
    bin(ens.f, view.F);
    bin(ens.g, view.G);

    view.rho.resize(grid.n_x);
    for (int i = 0; i < grid.n_x; ++i)
        view.rho[i] = view.F[i] - view.G[i];
    view.E = compute_E(view.rho, grid);
    for (int i = 0; i < grid.n_x; ++i)
        view.Q += view.E[i] * view.E[i] * (view.F[i] + view.G[i]);
    view.Q *= dx;
    return view;
}

double pic_total_momentum(const ParticleEnsemble& ens) {
    double sum = 0.0;
    for (double p : ens.f.p)
        sum += ens.f.weight * p;
    for (double p : ens.g.p)
        sum += ens.g.weight * p;
    return sum;
}

double pic_total_energy(const ParticleEnsemble& ens) {
    auto kinetic = [&](const ParticleEnsemble::Species& s) {
        double sum = 0.0;
        if (ens.model == ModelKind::classical) {
            for (double p : s.p)
                sum += 0.5 * p * p / s.mass;
        } else {
            for (double p : s.p)
                sum += std::sqrt(s.mass * s.mass + p * p) - s.mass;
        }
        return sum * s.weight;
    };

    // Pairwise field energy -1/4 sum_{i!=j} s_i s_j |x_i - x_j| via one sort
    // and prefix sums; equals (1/2) int E^2 dx for neutral ensembles.
    std::vector<Tagged> all;
    all.reserve(ens.f.x.size() + ens.g.x.size());
    for (std::size_t k = 0; k < ens.f.x.size(); ++k)
        all.push_back({ens.f.x[k], ens.f.charge_sign * ens.f.weight, 0});
    for (std::size_t k = 0; k < ens.g.x.size(); ++k)
        all.push_back({ens.g.x[k], ens.g.charge_sign * ens.g.weight, 0});
    std::sort(all.begin(), all.end(),
              [](const Tagged& a, const Tagged& b) { return a.x < b.x; });

    double field = 0.0;
    double prefix_w = 0.0, prefix_wx = 0.0;
    for (const Tagged& t : all) {
        field += t.sw * (t.x * prefix_w - prefix_wx);
        prefix_w += t.sw;
        prefix_wx += t.sw * t.x;
    }
    field *= -0.5;

    return kinetic(ens.f) + kinetic(ens.g) + field;
}

} // namespace vp1d
