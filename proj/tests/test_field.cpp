#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "vp1d/field.hpp"
#include "test_support.hpp"

using namespace vp1d;
using namespace vp1d::testing;

namespace {

// one x-cell containing the indicator of |v| <= 1, with cell edges aligned
// to +-1: v_max = 2, n_v = 4k.
SystemState indicator_state(int k, int& i0) {
    const PhaseGrid g = make_grid(-1.0, 1.0, 4, 2.0, 4 * k);
    SystemState st;
    st.grid = g;
    st.model = ModelKind::classical;
    st.f = make_species(g, 1.0, +1);
    st.g = make_species(g, 1.0, -1);
    i0 = 1;
    for (int j = 0; j < g.n_v; ++j)
        if (std::abs(g.v_center(j)) < 1.0)
            st.f.value(i0, j, g) = 1.0;
    return st;
}

} // namespace

TEST_CASE("compute_moments: empty species gives zero moments") {
    const PhaseGrid g = make_grid(-1.0, 1.0, 8, 1.0, 8);
    SystemState st;
    st.grid = g;
    st.f = make_species(g, 1.0, +1);
    st.g = make_species(g, 1.0, -1);
    const MomentProfile m = compute_moments(st);
    for (int i = 0; i < g.n_x; ++i) {
        CHECK(m.F[i] == 0.0);
        CHECK(m.first_moment_f[i] == 0.0);
        CHECK(m.second_moment_f[i] == 0.0);
        CHECK(m.e[i] == 0.0);
    }
}

TEST_CASE("compute_moments: indicator |v|<=1 has F=2, zero current, second moment 2/3") {
    const int k = 16;
    int i0 = 0;
    const SystemState st = indicator_state(k, i0);
    const double dv = st.grid.dv();
    const MomentProfile m = compute_moments(st);

    CHECK(m.F[i0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(m.first_moment_f[i0]) <= 1e-14);
    // midpoint rule on v^2 over [-1,1]: exactly 2/3 - dv^2/6
    CHECK(m.second_moment_f[i0] ==
          doctest::Approx(2.0 / 3.0 - dv * dv / 6.0).epsilon(1e-13));
    CHECK(std::abs(m.second_moment_f[i0] - 2.0 / 3.0) <= dv * dv / 6.0 * 1.0001);
}

TEST_CASE("compute_moments: v-symmetric data has vanishing first moments") {
    const PhaseGrid g = make_grid(-2.0, 2.0, 12, 1.5, 40);
    SystemState st;
    st.grid = g;
    st.f = make_species(g, 1.0, +1);
    st.g = make_species(g, 1.0, -1);
    std::mt19937_64 rng(7);
    for (int j = 0; j < g.n_v / 2; ++j)
        for (int i = 0; i < g.n_x; ++i) {
            const double val = uniform01(rng);
            st.f.value(i, j, g) = val;
            st.f.value(i, g.n_v - 1 - j, g) = val;
        }
    const MomentProfile m = compute_moments(st);
    for (int i = 0; i < g.n_x; ++i)
        CHECK(std::abs(m.first_moment_f[i]) <= 1e-13 * std::max(1.0, m.second_moment_f[i]));
}

TEST_CASE("compute_moments: discrete Cauchy-Schwarz per cell on random states") {
    const PhaseGrid g = make_grid(-3.0, 3.0, 24, 2.0, 48);
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        SystemState st;
        st.grid = g;
        st.f = random_species(g, rng);
        st.g = random_species(g, rng, 1.0, -1);
        const MomentProfile m = compute_moments(st);
        for (int i = 0; i < g.n_x; ++i) {
            const double lhs = m.first_moment_f[i] * m.first_moment_f[i];
            const double rhs = m.F[i] * m.second_moment_f[i];
            CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
            CHECK(m.F[i] >= 0.0);
            CHECK(m.second_moment_f[i] >= 0.0);
            CHECK(m.e[i] >= 0.0);
        }
    }
}

TEST_CASE("compute_rho: pointwise difference and mismatch error") {
    MomentProfile m;
    m.F = {2.0, 0.0, 1.0};
    m.G = {2.0, 0.0, 0.5};
    const std::vector<double> rho = compute_rho(m);
    CHECK(rho[0] == 0.0);
    CHECK(rho[1] == 0.0);
    CHECK(rho[2] == 0.5);
    m.G.pop_back();
    CHECK_THROWS_AS(compute_rho(m), std::invalid_argument);
}

TEST_CASE("compute_rho: neutral two-bump init integrates to zero charge") {
    const PhaseGrid g = make_grid(-12.0, 12.0, 128, 2.0, 64);
    TwoBumpParams p;
    p.f = {-1.0, 3.0, 0.0, 0.6, 0.5};
    p.g = {1.0, 4.0, 0.0, 1.2, 0.2};
    const SystemState st = init_two_bump(g, p);
    const std::vector<double> rho = compute_rho(compute_moments(st));
    double total = 0.0;
    for (double r : rho)
        total += r * g.dx();
    CHECK(std::abs(total) <= 1e-12 * species_mass(st.f, g));
}

TEST_CASE("compute_E: zero charge gives zero field") {
    const PhaseGrid g = make_grid(-1.0, 1.0, 16, 1.0, 4);
    const std::vector<double> E = compute_E(std::vector<double>(16, 0.0), g);
    for (double e : E)
        CHECK(e == 0.0);
}

TEST_CASE("compute_E: piecewise-constant dipole matches the exact field at cell right edges") {
    // rho = +1 on [-1,0), -1 on [0,1): E = x+1 on [-1,0], 1-x on [0,1], 0 outside
    const PhaseGrid g = make_grid(-2.0, 2.0, 64, 1.0, 4);
    const double dx = g.dx();
    std::vector<double> rho(g.n_x, 0.0);
    for (int i = 0; i < g.n_x; ++i) {
        const double x = g.x_center(i);
        if (x > -1.0 && x < 0.0)
            rho[i] = 1.0;
        else if (x > 0.0 && x < 1.0)
            rho[i] = -1.0;
    }
    const std::vector<double> E = compute_E(rho, g);
    auto exact = [](double x) {
        if (x <= -1.0 || x >= 1.0)
            return 0.0;
        return x < 0.0 ? x + 1.0 : 1.0 - x;
    };
    for (int i = 0; i < g.n_x; ++i) {
        const double edge = g.x_center(i) + 0.5 * dx; // cumulative sum lands on the right edge
        CHECK(E[i] == doctest::Approx(exact(edge)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("compute_E: discrete Gauss law is exact and the field obeys the mass bound") {
    const PhaseGrid g = make_grid(-4.0, 4.0, 200, 1.0, 4);
    const double dx = g.dx();
    std::mt19937_64 rng(3);
    std::vector<double> rho(g.n_x);
    double l1 = 0.0;
    for (double& r : rho) {
        r = 2.0 * uniform01(rng) - 1.0;
        l1 += std::abs(r) * dx;
    }
    const std::vector<double> E = compute_E(rho, g);
    for (int i = 0; i + 1 < g.n_x; ++i)
        CHECK((E[i + 1] - E[i]) / dx == doctest::Approx(rho[i + 1]).epsilon(1e-12).scale(1.0));
    for (int i = 0; i < g.n_x; ++i)
        CHECK(std::abs(E[i]) <= 0.5 * l1 * (1.0 + 1e-12));
}

TEST_CASE("compute_E: boundary values vanish for neutral charge") {
    const PhaseGrid g = make_grid(-4.0, 4.0, 128, 1.0, 4);
    std::mt19937_64 rng(11);
    std::vector<double> rho(g.n_x, 0.0);
    double sum = 0.0;
    for (int i = 8; i < g.n_x - 8; ++i) {
        rho[i] = uniform01(rng) - 0.5;
        sum += rho[i];
    }
    rho[g.n_x / 2] -= sum; // make it exactly neutral
    const std::vector<double> E = compute_E(rho, g);
    CHECK(std::abs(E[0]) <= 1e-12 * l1_norm(rho) * g.dx());
    CHECK(std::abs(E[g.n_x - 1]) <= 1e-12 * l1_norm(rho) * g.dx());
}

TEST_CASE("compute_E: linear in rho") {
    const PhaseGrid g = make_grid(-2.0, 2.0, 96, 1.0, 4);
    std::mt19937_64 rng(19);
    std::vector<double> r1(g.n_x), r2(g.n_x), mix(g.n_x);
    const double a = 0.7, b = -1.9;
    for (int i = 0; i < g.n_x; ++i) {
        r1[i] = uniform01(rng) - 0.3;
        r2[i] = uniform01(rng) - 0.6;
        mix[i] = a * r1[i] + b * r2[i];
    }
    const std::vector<double> E1 = compute_E(r1, g);
    const std::vector<double> E2 = compute_E(r2, g);
    const std::vector<double> Em = compute_E(mix, g);
    for (int i = 0; i < g.n_x; ++i)
        CHECK(Em[i] == doctest::Approx(a * E1[i] + b * E2[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("compute_current: cancellation cases") {
    const PhaseGrid g = make_grid(-2.0, 2.0, 12, 1.5, 30);
    std::mt19937_64 rng(5);
    SystemState st;
    st.grid = g;
    st.model = ModelKind::classical;
    st.f = random_species(g, rng, 1.0, +1);
    st.g = st.f;
    st.g.charge_sign = -1;
    const std::vector<double> j_same = compute_current(st);
    for (double v : j_same)
        CHECK(v == 0.0); // identical species, same mass: exact cancellation

    // v-symmetric data: odd integrand sums to round-off
    SystemState sym;
    sym.grid = g;
    sym.model = ModelKind::relativistic;
    sym.f = make_species(g, 1.0, +1);
    sym.g = make_species(g, 2.0, -1);
    for (int j = 0; j < g.n_v / 2; ++j)
        for (int i = 0; i < g.n_x; ++i) {
            const double val = uniform01(rng);
            sym.f.value(i, j, g) = val;
            sym.f.value(i, g.n_v - 1 - j, g) = val;
        }
    for (double v : compute_current(sym))
        CHECK(std::abs(v) <= 1e-13);
}

TEST_CASE("compute_current: relativistic single-cell value is the transport speed") {
    // grid with a v-node exactly at 1: v_max = 1.5, n_v = 3 -> centers -1, 0, 1
    const PhaseGrid g = make_grid(-1.0, 1.0, 2, 1.5, 3);
    SystemState st;
    st.grid = g;
    st.model = ModelKind::relativistic;
    st.f = make_species(g, 1.0, +1);
    st.g = make_species(g, 1.0, -1);
    REQUIRE(g.v_center(2) == doctest::Approx(1.0).epsilon(1e-15));
    st.f.value(0, 2, g) = 1.0 / g.dv(); // f dv = 1
    const std::vector<double> j = compute_current(st);
    CHECK(j[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(j[1] == 0.0);
}
