#include "vp1d/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "vp1d/errors.hpp"
#include "vp1d/field.hpp"

namespace vp1d {

namespace {

// Backward-trace decomposition of a uniform shift by `a` cells:
// departure index for target i is i + m + w with m integer, w in [0,1).
struct Shift {
    int m;
    double w;
};

Shift decompose(double a, int n) {
    // anything beyond the grid empties the row; clamp to keep indices sane
    if (a > 2.0 * n)
        a = 2.0 * n;
    if (a < -2.0 * n)
        a = -2.0 * n;
    const double d = std::floor(-a);
    return {static_cast<int>(d), -a - d};
}

// dst[i] = (1-w) src[i+m] + w src[i+m+1], zeros outside [0,n).
// The weights are nonnegative and sum to one, so positivity is preserved and
// the row sum telescopes to the source sum up to boundary outflow.
void shift_linear(const double* src, double* dst, int n, Shift s) {
    const double w = s.w;
    const double c0 = 1.0 - w;
    auto guarded = [&](int i) {
        const int k = i + s.m;
        double acc = 0.0;
        if (k >= 0 && k < n)
            acc += c0 * src[k];
        if (w != 0.0 && k + 1 >= 0 && k + 1 < n)
            acc += w * src[k + 1];
        return acc;
    };
    const int lo = std::max(0, -s.m);        // first i with i+m in range
    const int hi = std::min(n, n - 1 - s.m); // first i with i+m+1 out of range
    for (int i = 0; i < std::min(lo, n); ++i)
        dst[i] = guarded(i);
    for (int i = std::max(0, lo); i < hi; ++i)
        dst[i] = c0 * src[i + s.m] + w * src[i + s.m + 1];
    for (int i = std::max(lo, hi); i < n; ++i)
        dst[i] = guarded(i);
}

struct CubicCoeffs {
    double cm1, c0, c1, c2;
};

CubicCoeffs cubic_coeffs(double w) {
    // Lagrange cubic on the four nodes around the departure point.
    const double wm1 = w - 1.0;
    const double wm2 = w - 2.0;
    const double wp1 = w + 1.0;
    return {-w * wm1 * wm2 / 6.0, wp1 * wm1 * wm2 / 2.0, -w * wp1 * wm2 / 2.0,
            w * wp1 * wm1 / 6.0};
}

// Cubic update with clipping at zero. Returns the pre-clip (conservative)
// and post-clip row sums so the caller can renormalize.
void shift_cubic(const double* src, double* dst, int n, Shift s, double& raw_sum,
                 double& clip_sum) {
    const CubicCoeffs c = cubic_coeffs(s.w);
    raw_sum = 0.0;
    clip_sum = 0.0;
    const int lo = std::max(0, 1 - s.m);      // i with i+m-1 >= 0
    const int hi = std::min(n, n - 3 - s.m);  // i with i+m+2 <= n-1 (exclusive)
    auto guarded = [&](int i) {
        const int k = i + s.m;
        double acc = 0.0;
        if (k - 1 >= 0 && k - 1 < n)
            acc += c.cm1 * src[k - 1];
        if (k >= 0 && k < n)
            acc += c.c0 * src[k];
        if (k + 1 >= 0 && k + 1 < n)
            acc += c.c1 * src[k + 1];
        if (k + 2 >= 0 && k + 2 < n)
            acc += c.c2 * src[k + 2];
        return acc;
    };
    for (int i = 0; i < std::min(lo, n); ++i) {
        const double p = guarded(i);
        raw_sum += p;
        dst[i] = p > 0.0 ? p : 0.0;
        clip_sum += dst[i];
    }
    for (int i = std::max(0, lo); i < hi; ++i) {
        const int k = i + s.m;
        const double p = c.cm1 * src[k - 1] + c.c0 * src[k] + c.c1 * src[k + 1] + c.c2 * src[k + 2];
        raw_sum += p;
        dst[i] = p > 0.0 ? p : 0.0;
        clip_sum += dst[i];
    }
    for (int i = std::max(lo, hi); i < n; ++i) {
        const double p = guarded(i);
        raw_sum += p;
        dst[i] = p > 0.0 ? p : 0.0;
        clip_sum += dst[i];
    }
}

void renormalize_row(double* dst, int n, double raw_sum, double clip_sum) {
    if (raw_sum > 0.0 && clip_sum > 0.0 && raw_sum != clip_sum) {
        const double scale = raw_sum / clip_sum;
        for (int i = 0; i < n; ++i)
            dst[i] *= scale;
    }
}

} // namespace

SpeciesState advect_x(const SpeciesState& s, double dt, ModelKind model, const PhaseGrid& grid,
                      Interpolation interp, bool renormalize) {
    const int nx = grid.n_x;
    SpeciesState out;
    out.mass = s.mass;
    out.charge_sign = s.charge_sign;
    out.values.assign(s.values.size(), 0.0);

    // The shift is uniform along each v-row, and rows are contiguous.
    for (int j = 0; j < grid.n_v; ++j) {
        const double u = transport_speed(grid.v_center(j), model, s.mass);
        const Shift sh = decompose(u * dt / grid.dx(), nx);
        const double* src = s.values.data() + static_cast<std::size_t>(j) * nx;
        double* dst = out.values.data() + static_cast<std::size_t>(j) * nx;
        if (interp == Interpolation::linear) {
            shift_linear(src, dst, nx, sh);
        } else {
            double raw = 0.0, clip = 0.0;
            shift_cubic(src, dst, nx, sh, raw, clip);
            if (renormalize)
                renormalize_row(dst, nx, raw, clip);
        }
    }
    return out;
}

SpeciesState advect_v(const SpeciesState& s, const std::vector<double>& E, double dt,
                      const PhaseGrid& grid, Interpolation interp, bool renormalize) {
    const int nx = grid.n_x;
    const int nv = grid.n_v;
    if (static_cast<int>(E.size()) != nx)
        throw std::invalid_argument("advect_v: E length does not match n_x");

    SpeciesState out;
    out.mass = s.mass;
    out.charge_sign = s.charge_sign;
    out.values.assign(s.values.size(), 0.0);

    // Column shifts vary with x but are uniform along v; sweep target rows
    // (contiguous) with per-column coefficients.
    std::vector<Shift> sh(nx);
    for (int i = 0; i < nx; ++i)
        sh[i] = decompose(s.charge_sign * E[i] * dt / grid.dv(), nv);

    const double* src = s.values.data();
    double* dst = out.values.data();

    if (interp == Interpolation::linear) {
        for (int j = 0; j < nv; ++j) {
            double* d = dst + static_cast<std::size_t>(j) * nx;
            for (int i = 0; i < nx; ++i) {
                const int k = j + sh[i].m;
                const double w = sh[i].w;
                double acc = 0.0;
                if (k >= 0 && k < nv)
                    acc += (1.0 - w) * src[static_cast<std::size_t>(k) * nx + i];
                if (k + 1 >= 0 && k + 1 < nv && w != 0.0)
                    acc += w * src[static_cast<std::size_t>(k + 1) * nx + i];
                d[i] = acc;
            }
        }
        return out;
    }

    std::vector<CubicCoeffs> cc(nx);
    for (int i = 0; i < nx; ++i)
        cc[i] = cubic_coeffs(sh[i].w);
    std::vector<double> raw(nx, 0.0), clip(nx, 0.0);
    for (int j = 0; j < nv; ++j) {
        double* d = dst + static_cast<std::size_t>(j) * nx;
        for (int i = 0; i < nx; ++i) {
            const int k = j + sh[i].m;
            double acc = 0.0;
            if (k - 1 >= 0 && k + 2 < nv) {
                const std::size_t base = static_cast<std::size_t>(k - 1) * nx + i;
                acc = cc[i].cm1 * src[base] + cc[i].c0 * src[base + nx] +
                      cc[i].c1 * src[base + 2 * static_cast<std::size_t>(nx)] +
                      cc[i].c2 * src[base + 3 * static_cast<std::size_t>(nx)];
            } else {
                if (k - 1 >= 0 && k - 1 < nv)
                    acc += cc[i].cm1 * src[static_cast<std::size_t>(k - 1) * nx + i];
                if (k >= 0 && k < nv)
                    acc += cc[i].c0 * src[static_cast<std::size_t>(k) * nx + i];
                if (k + 1 >= 0 && k + 1 < nv)
                    acc += cc[i].c1 * src[static_cast<std::size_t>(k + 1) * nx + i];
                if (k + 2 >= 0 && k + 2 < nv)
                    acc += cc[i].c2 * src[static_cast<std::size_t>(k + 2) * nx + i];
            }
            raw[i] += acc;
            d[i] = acc > 0.0 ? acc : 0.0;
            clip[i] += d[i];
        }
    }
    if (renormalize) {
        for (int i = 0; i < nx; ++i) {
            if (raw[i] > 0.0 && clip[i] > 0.0 && raw[i] != clip[i]) {
                const double scale = raw[i] / clip[i];
                for (int j = 0; j < nv; ++j)
                    dst[static_cast<std::size_t>(j) * nx + i] *= scale;
            }
        }
    }
    return out;
}

namespace {

[[noreturn]] void throw_escape(const SupportReport& rep, double t) {
    char msg[192];
    std::snprintf(msg, sizeof msg,
                  "support escape: species %s reached the %s boundary at t = %.6g "
                  "(boundary mass fraction %.3g)",
                  rep.species.c_str(), rep.boundary.c_str(), t, rep.fraction);
    throw support_escape_error(msg, t, -1);
}

} // namespace

SystemState step(const SystemState& state, const StepParams& p) {
    if (!(p.dt > 0.0))
        throw std::invalid_argument("step: dt must be positive");

    SystemState next;
    next.grid = state.grid;
    next.model = state.model;

    const double half = 0.5 * p.dt;
    next.f = advect_x(state.f, half, state.model, state.grid, p.interpolation, p.renormalize);
    next.g = advect_x(state.g, half, state.model, state.grid, p.interpolation, p.renormalize);

    // Cheng-Knorr ordering: one field solve from the mid-step state keeps the
    // composition second order without extrapolating E. The cumulative-sum
    // field lives on cell right edges; the kick needs it at centers, so shift
    // by half the local charge (second order in dx, same discrete Gauss law).
    next.t = state.t;
    MomentProfile m = compute_moments(next);
    std::vector<double> rho = compute_rho(m);
    std::vector<double> E = compute_E(rho, state.grid);
    const double half_dx = 0.5 * state.grid.dx();
    for (std::size_t i = 0; i < E.size(); ++i)
        E[i] -= rho[i] * half_dx;

    next.f = advect_v(next.f, E, p.dt, state.grid, p.interpolation, p.renormalize);
    next.g = advect_v(next.g, E, p.dt, state.grid, p.interpolation, p.renormalize);

    next.f = advect_x(next.f, half, state.model, state.grid, p.interpolation, p.renormalize);
    next.g = advect_x(next.g, half, state.model, state.grid, p.interpolation, p.renormalize);

    next.t = state.t + p.dt;

    const SupportReport rep = support_escape_report(next, p.support_tol);
    if (rep.escaped)
        throw_escape(rep, next.t);
    return next;
}

namespace {

struct BandMasses {
    double x_low = 0.0, x_high = 0.0, v_low = 0.0, v_high = 0.0;
    double band_union = 0.0;
    double total = 0.0;
};

BandMasses band_masses(const SpeciesState& s, const PhaseGrid& g) {
    const int nx = g.n_x;
    const int nv = g.n_v;
    const int bx = std::min(2, nx);
    const int bv = std::min(2, nv);
    BandMasses b;
    for (int j = 0; j < nv; ++j) {
        const double* row = s.values.data() + static_cast<std::size_t>(j) * nx;
        const bool v_edge_low = j < bv;
        const bool v_edge_high = j >= nv - bv;
        for (int i = 0; i < nx; ++i) {
            const double val = row[i];
            b.total += val;
            const bool x_edge_low = i < bx;
            const bool x_edge_high = i >= nx - bx;
            if (x_edge_low)
                b.x_low += val;
            if (x_edge_high)
                b.x_high += val;
            if (v_edge_low)
                b.v_low += val;
            if (v_edge_high)
                b.v_high += val;
            if (x_edge_low || x_edge_high || v_edge_low || v_edge_high)
                b.band_union += val;
        }
    }
    return b;
}

} // namespace

SupportReport support_escape_report(const SystemState& state, double tol) {
    SupportReport rep;
    const SpeciesState* species[2] = {&state.f, &state.g};
    const char* names[2] = {"f", "g"};
    for (int k = 0; k < 2; ++k) {
        const BandMasses b = band_masses(*species[k], state.grid);
        if (b.total <= 0.0)
            continue;
        if (b.band_union > tol * b.total) {
            rep.escaped = true;
            rep.species = names[k];
            rep.fraction = b.band_union / b.total;
            double worst = b.x_low;
            rep.boundary = "x_low";
            if (b.x_high > worst) {
                worst = b.x_high;
                rep.boundary = "x_high";
            }
            if (b.v_low > worst) {
                worst = b.v_low;
                rep.boundary = "v_low";
            }
            if (b.v_high > worst) {
                worst = b.v_high;
                rep.boundary = "v_high";
            }
            return rep;
        }
    }
    return rep;
}

bool support_escape(const SystemState& state, double tol) {
    return support_escape_report(state, tol).escaped;
}

} // namespace vp1d
