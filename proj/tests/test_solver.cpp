#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ccwave/errors.hpp"
#include "ccwave/experiments.hpp"
#include "ccwave/fourier.hpp"
#include "ccwave/solver.hpp"
#include "test_support.hpp"

using namespace ccwave;
using ccwave::testing::max_abs_diff;
using ccwave::testing::rel_err;

namespace {

Field reflect_x(const Field& u) {
    Field r = u;
    const Grid& g = u.grid;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) r.at(i, j) = u.at((g.nx - i) % g.nx, j);
    return r;
}

Field small_datum(const Grid& g, double amp) {
    return gaussian_datum(g, Depth::finite(1.0), amp, 1.0, 2.0, 2.0);
}

}  // namespace

TEST_CASE("step: zero field, integrator degeneracy, linear limit") {
    Grid g = make_grid(64, 64, 16.0 * M_PI, 16.0 * M_PI);
    SolverConfig cfg;
    cfg.dt = 0.01;

    Field zero(g, Space::Fourier, 0.0, Depth::finite(1.0));
    Field z1 = step(zero, cfg);
    CHECK(l2_norm(z1) == 0.0);
    CHECK(z1.t == doctest::Approx(0.01));

    // nonlinearity disabled: one step equals the exact propagator
    Field mode(g, Space::Fourier, 0.0, Depth::finite(1.0));
    mode.at(3, 2) = cplx(0.4, -0.2);
    mode.at((g.nx - 3) % g.nx, (g.ny - 2) % g.ny) = cplx(0.4, 0.2);
    SolverConfig lin = cfg;
    lin.nonlinear = false;
    Field a = step(mode, lin);
    Field b = propagate_linear(mode, cfg.dt);
    CHECK(max_abs_diff(a, b) == 0.0);

    // amplitude-eps data: || step - propagate_linear || = O(eps^2 dt)
    Field base = to_fourier(small_datum(g, 1.0));
    auto defect = [&](double eps) {
        Field u = base;
        for (auto& v : u.data) v *= eps;
        Field s = step(u, cfg);
        Field p = propagate_linear(u, cfg.dt);
        return l2_norm(s - p);
    };
    const double d1 = defect(0.1);
    const double d2 = defect(0.05);
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("conservation: mass reference value and drift rates") {
    // mass of cos(x) on the 2pi x 2pi grid is 2 pi^2
    Grid g2 = make_grid(64, 64, 2.0 * M_PI, 2.0 * M_PI);
    Field cosx(g2, Space::Physical, 0.0, Depth::finite(1.0));
    for (int i = 0; i < g2.nx; ++i)
        for (int j = 0; j < g2.ny; ++j) cosx.at(i, j) = std::cos(g2.x[i]);
    CHECK(mass(cosx) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));

    // small-data nonlinear run over unit time at dt = 1e-3 on 256^2
    Grid g = make_grid(256, 256, 16.0 * M_PI, 16.0 * M_PI);
    Field u0 = small_datum(g, 0.05);
    const double m0 = mass(u0), e0 = energy(u0);
    for (double dt : {1e-3, 5e-4}) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 1.0;
        EvolveResult r = evolve(u0, cfg);
        CHECK(std::abs(mass(r.u) - m0) / m0 < 1e-10);
        CHECK(std::abs(energy(r.u) - e0) / std::abs(e0) < 1e-8);
        CHECK(!r.wrapped);
    }
}

TEST_CASE("energy: zero field, quadrature oracle") {
    Grid g = make_grid(128, 128, 2.0 * M_PI, 2.0 * M_PI);
    Field zero(g, Space::Physical, 0.0, Depth::finite(1.0));
    CHECK(energy(zero) == 0.0);

    // u = 0.1 cos x cos y: T^{-1} d_x u = -coth(1) u and dx^{-1} dy u = -0.1 sin x sin y,
    // so the oracle is a pure real-space Riemann sum of closed forms.
    Field u(g, Space::Physical, 0.0, Depth::finite(1.0));
    double oracle = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double uu = 0.1 * std::cos(g.x[i]) * std::cos(g.y[j]);
            u.at(i, j) = uu;
            const double pxy = -0.1 * std::sin(g.x[i]) * std::sin(g.y[j]);
            oracle += uu * (-coth(1.0) * uu) + uu * uu + pxy * pxy - uu * uu * uu / 3.0;
        }
    oracle *= g.cell_area();
    CHECK(std::abs(energy(u) - oracle) < 1e-10);

    Field bad(g, Space::Fourier, 0.0, Depth::finite(1.0));
    bad.at(0, 1) = 1.0;
    CHECK_THROWS_AS(energy(bad), domain_error);
}

TEST_CASE("evolve: t_end = 0, snapshots, order-4 convergence") {
    Grid g = make_grid(128, 64, 16.0 * M_PI, 8.0 * M_PI);
    Field u0 = small_datum(g, 0.3);
    SolverConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 0.0;
    EvolveResult r0 = evolve(u0, cfg);
    CHECK(max_abs_diff(r0.u, u0) < 1e-13);
    CHECK(r0.diagnostics.size() == 1);

    auto run = [&](double dt) {
        SolverConfig c;
        c.dt = dt;
        c.t_end = 1.0;
        return evolve(u0, c).u;
    };
    Field a = run(0.05), b = run(0.025), c = run(0.0125);
    const double e1 = l2_norm(a - b);
    const double e2 = l2_norm(b - c);
    CHECK(e1 / e2 > 10.0);
    CHECK(e1 / e2 < 26.0);
}

TEST_CASE("blow-up detection") {
    Grid g = make_grid(64, 64, 2.0 * M_PI, 2.0 * M_PI);
    Field u0 = gaussian_datum(g, Depth::finite(1.0), 1e11, 1.0, 0.8, 0.8);
    SolverConfig cfg;
    cfg.dt = 0.5;
    cfg.t_end = 50.0;
    cfg.blowup_threshold = 1e10;
    CHECK_THROWS_AS(evolve(u0, cfg), blowup_error);
}

TEST_CASE("scaling map: identity, linear commutation, nonlinear defect") {
    Grid g = make_grid(128, 64, 16.0 * M_PI, 8.0 * M_PI);
    Field u0 = small_datum(g, 0.2);
    u0.h = Depth::infinite();

    Field s1 = apply_scaling(u0, 1.0);
    CHECK(max_abs_diff(s1, u0) == 0.0);
    CHECK(s1.grid.Lx == u0.grid.Lx);

    // linear flow commutes exactly with the scaling map (infinite depth)
    const double lam = 2.0, T = 3.0;
    Field u0f = to_fourier(u0);
    Field a = apply_scaling(to_physical(propagate_linear(u0f, T)), lam);
    Field b = to_physical(propagate_linear(to_fourier(apply_scaling(u0, lam)), T / (lam * lam)));
    CHECK(max_abs_diff(a, b) < 1e-10);
    CHECK(a.t == doctest::Approx(b.t));

    // finite depth: h rescales to h / lambda
    Field v0 = small_datum(g, 0.2);
    Field v = apply_scaling(v0, 2.0);
    CHECK(v.h.value() == doctest::Approx(0.5));
    Field af = apply_scaling(to_physical(propagate_linear(to_fourier(v0), T)), lam);
    Field bf = to_physical(propagate_linear(to_fourier(apply_scaling(v0, lam)), T / (lam * lam)));
    CHECK(max_abs_diff(af, bf) < 1e-10);

    // nonlinear commutation defect shrinks with dt at integrator order
    auto defect = [&](double dt) {
        SolverConfig c1;
        c1.dt = dt;
        c1.t_end = 1.0;
        c1.h = Depth::infinite();
        Field lhs = apply_scaling(evolve(u0, c1).u, lam);
        SolverConfig c2;
        c2.dt = dt / (lam * lam);
        c2.t_end = 1.0 / (lam * lam);
        c2.h = Depth::infinite();
        Field rhs = evolve(apply_scaling(u0, lam), c2).u;
        return l2_norm(lhs - rhs);
    };
    const double d1 = defect(0.08);
    const double d2 = defect(0.04);
    CHECK(d2 < d1);
    CHECK(d1 / d2 > 8.0);
}

TEST_CASE("Galilean map: identity, exact linear commutation, compatibility") {
    Grid g = make_grid(128, 128, 8.0 * M_PI, 8.0 * M_PI);
    Field u0 = to_fourier(small_datum(g, 0.2));

    CHECK(max_abs_diff(apply_galilean(u0, 0.0), u0) == 0.0);
    CHECK_THROWS_AS(apply_galilean(u0, 0.37), domain_error);

    const double c = 1.0, T = 2.0;
    Field a = apply_galilean(propagate_linear(u0, T), c);
    Field b = propagate_linear(apply_galilean(u0, c), T);
    CHECK(max_abs_diff(a, b) < 1e-12);

    // nonlinear commutation defect is integrator-order small
    auto defect = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 1.0;
        Field lhs = to_fourier(evolve(to_physical(apply_galilean(u0, c)), cfg).u);
        Field rhs = apply_galilean(to_fourier(evolve(to_physical(u0), cfg).u), c);
        return l2_norm(lhs - rhs);
    };
    const double d1 = defect(0.1);
    const double d2 = defect(0.05);
    CHECK(d2 < d1);
    CHECK(d1 / d2 > 8.0);
}

TEST_CASE("time-reversal symmetry of the flow") {
    Grid g = make_grid(128, 64, 16.0 * M_PI, 8.0 * M_PI);
    Field u0 = small_datum(g, 0.3);
    const double dt = 0.02;

    // u(-dt, x, y) = reflect_x evolve(reflect_x u0, dt)
    Stepper back(g, Depth::finite(1.0), -dt, true);
    Field ub = to_fourier(u0);
    back.step(ub);

    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = dt;
    Field ref = reflect_x(evolve(reflect_x(u0), cfg).u);
    CHECK(l2_norm(to_physical(ub) - ref) < 1e-10 * std::max(1.0, l2_norm(u0)));
}

TEST_CASE("default dt rule") {
    Grid g = make_grid(32, 32, 2.0 * M_PI, 2.0 * M_PI);
    double mx = 0.0;
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            if (3 * std::abs(Grid::wrap(i, g.nx)) > g.nx || 3 * std::abs(Grid::wrap(j, g.ny)) > g.ny)
                continue;
            if (g.xi[i] != 0.0) mx = std::max(mx, std::abs(omega(Depth::finite(1.0), g.xi[i], g.eta[j])));
        }
    CHECK(default_dt(g, Depth::finite(1.0)) == doctest::Approx(0.5 / mx).epsilon(1e-14));
}

TEST_CASE("diagnostics: wrap flag on off-center mass") {
    Grid g = make_grid(64, 64, 32.0, 32.0);
    Field u(g, Space::Physical, 0.0, Depth::finite(1.0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double x = g.x[i] - 12.0, y = g.y[j];
            u.at(i, j) = std::exp(-(x * x + y * y));
        }
    DiagnosticsRecord d = diagnose(u);
    CHECK(d.wrapped);
    CHECK(d.outside_mass_fraction > 0.5);

    Field centered = small_datum(g, 1.0);
    CHECK(!diagnose(centered).wrapped);
}
