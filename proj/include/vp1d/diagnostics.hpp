#ifndef VP1D_DIAGNOSTICS_HPP
#define VP1D_DIAGNOSTICS_HPP

#include "vp1d/field.hpp"
#include "vp1d/phase_space.hpp"

namespace vp1d {

// Scalar functionals of one state. Q controls the field pointwise through
// |E(x)|^3 <= 3Q; L4, L74, the local charges and the moment defects are the
// quantities whose time integrals (or limits) the run is meant to exhibit.
struct DiagnosticsRecord {
    double t = 0.0;
    double Q = 0.0;                 // int E^2 (F+G) dx
    double E_inf = 0.0;             // max |E|
    double E_inf_cubed_bound = 0.0; // 3Q
    double L4 = 0.0;                // int (F^4 + G^4) dx
    double L74 = 0.0;               // (int (F^{7/4} + G^{7/4}) dx)^4
    double local_charge_F = 0.0;    // int_{|x|<R} F dx
    double local_charge_G = 0.0;    // int_{|x|<R} G dx
    double kdefect_f = 0.0;         // int [F int v^2 f dv - (int v f dv)^2] dx
    double kdefect_g = 0.0;
    double mass_f = 0.0;
    double mass_g = 0.0;
    double energy_total = 0.0;      // kinetic (model-dependent) + field energy
    double dQdt = 0.0;              // -2 int jE(F+G) dx + 2 int rho E (int u_f f + u_g g dv) dx

    // Run-health extras (not part of the CSV schema).
    double gauss_mismatch = 0.0;    // max_i |(E[i+1]-E[i])/dx - rho[i+1]|, relative
    double eq4_allowance = 0.0;     // |E_bnd|^3 + 3 E_inf dx int rho^2 dx
    double min_f = 0.0;             // grid minimum of f (positivity monitor)
    double min_g = 0.0;
};

// All terms of the virial-ledger identity dM/dt + (A_f-B_f) + (A_g-B_g) + L = 0
// for one pair of consecutive classical states. M is reported at the midpoint,
// dM/dt by central difference, A/B/L as prev/next averages. L <= 0 and
// A_s <= B_s hold exactly (Cauchy-Schwarz); residual -> 0 under refinement.
struct VirialLedger {
    double M = 0.0;    // int [int v f dv * int_{-inf}^x F dy + (g term)] dx
    double dMdt = 0.0;
    double A_f = 0.0;  // int (int v f dv)^2 dx
    double A_g = 0.0;
    double B_f = 0.0;  // int F int v^2 f dv dx
    double B_g = 0.0;
    double L = 0.0;    // -1/4 int E^2 (F+G) dx
    double residual = 0.0;
};

// Trapezoidal time accumulations of Q, L4, L74 and ||E||_inf^3.
struct TimeIntegrals {
    double int_Q = 0.0;
    double int_L4 = 0.0;
    double int_L74 = 0.0;
    double int_Einf3 = 0.0;

    // trapezoid needs the previous sample
    bool primed = false;
    double prev_Q = 0.0;
    double prev_L4 = 0.0;
    double prev_L74 = 0.0;
    double prev_Einf3 = 0.0;
};

DiagnosticsRecord record(const SystemState& state, double local_charge_radius);

// Independent O(n_v^2) oracle for the x-integrated moment defect:
// (1/2) int int int (w-v)^2 f(x,v) f(x,w) dv dw dx by direct double summation.
double kdefect_bruteforce(const SpeciesState& s, const PhaseGrid& grid);

// Classical-mode only; throws std::invalid_argument for relativistic states.
VirialLedger audit_virial(const SystemState& prev, const SystemState& next, double dt);

// Maxima of the moment-interpolation ratios int|v|(f+g)dv / e^{2/3} and
// F / e^{1/3} over cells with e above the vacuum floor.
struct MomentInterpolationReport {
    double max_ratio_abs_moment = 0.0;
    double max_ratio_F = 0.0;
    int cells_evaluated = 0;
};

MomentInterpolationReport moment_interpolation_check(const MomentProfile& m,
                                                     double e_floor = 1e-12);

// Per-cell splitting-bound ratios F^4 / k with k = 2(F int v^2 f - (int v f)^2),
// evaluated where F exceeds floor_frac * max F (discrete vacuum guard).
struct L4SplitReport {
    double max_ratio_f = 0.0;
    double max_ratio_g = 0.0;
};

L4SplitReport l4_split_check(const MomentProfile& m, const PhaseGrid& grid,
                             double floor_frac = 1e-6);

TimeIntegrals accumulate(TimeIntegrals ti, const DiagnosticsRecord& rec, double dt);

} // namespace vp1d

#endif
