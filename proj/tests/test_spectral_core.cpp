#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ccwave/errors.hpp"
#include "ccwave/fourier.hpp"
#include "ccwave/kernel.hpp"
#include "ccwave/spectral.hpp"
#include "ccwave/symbols.hpp"
#include "ccwave/wavepacket.hpp"
#include "test_support.hpp"

using namespace ccwave;
using ccwave::testing::max_abs_diff;
using ccwave::testing::random_real_field;
using ccwave::testing::rel_err;

TEST_CASE("make_grid frequency tables") {
    Grid g = make_grid(8, 8, 2.0 * M_PI, 2.0 * M_PI);
    // wrap order {0,1,2,3,-4,-3,-2,-1}
    std::vector<double> sorted = g.xi;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 8; ++i) CHECK(sorted[i] == doctest::Approx(-4.0 + i).epsilon(1e-15));
    CHECK(std::count(g.xi.begin(), g.xi.end(), 0.0) == 1);

    Grid g2 = make_grid(16, 8, 4.0 * M_PI, 2.0 * M_PI);
    CHECK(g2.xi[1] == doctest::Approx(0.5));
    CHECK(g2.eta[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(make_grid(12, 8, 1.0, 1.0), config_error);
    CHECK_THROWS_AS(make_grid(8, 8, -1.0, 1.0), config_error);
    CHECK_THROWS_AS(make_grid(4, 8, 1.0, 1.0), config_error);
}

TEST_CASE("transforms: spikes, roundtrip, Parseval") {
    Grid g = make_grid(32, 32, 2.0 * M_PI, 2.0 * M_PI);

    Field one(g, Space::Physical, 0.0, Depth::finite(1.0));
    for (auto& v : one.data) v = 1.0;
    Field onef = to_fourier(one);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            if (i != 0 || j != 0) CHECK(std::abs(onef.at(i, j)) < 1e-13);
    CHECK(std::abs(onef.at(0, 0)) == doctest::Approx(2.0 * M_PI).epsilon(1e-13));  // sqrt(LxLy)*1
    CHECK(max_abs_diff(to_physical(onef), one) < 1e-13);

    Field cosx(g, Space::Physical, 0.0, Depth::finite(1.0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) cosx.at(i, j) = std::cos(g.x[i]);
    Field cf = to_fourier(cosx);
    CHECK(std::abs(cf.at(1, 0)) == doctest::Approx(std::abs(cf.at(g.nx - 1, 0))).epsilon(1e-13));
    double offmass = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            if (!((i == 1 || i == g.nx - 1) && j == 0)) offmass += std::norm(cf.at(i, j));
    CHECK(offmass < 1e-24);

    Field r = to_physical(random_real_field(g, 42));
    CHECK(max_abs_diff(to_physical(to_fourier(r)), r) < 1e-12);
    CHECK(rel_err(l2_norm(r), l2_norm(to_fourier(r))) < 1e-13);
}

TEST_CASE("apply_multiplier composition and inverse derivative") {
    Grid g = make_grid(32, 16, 2.0 * M_PI, 2.0 * M_PI);
    Field u = random_real_field(g, 5);

    Field id = apply_multiplier(u, [](double, double) { return cplx(1.0, 0.0); });
    CHECK(max_abs_diff(id, u) == 0.0);

    Field d2a = apply_multiplier(apply_multiplier(u, [](double xi, double) { return cplx(0.0, xi); }),
                                 [](double xi, double) { return cplx(0.0, xi); });
    Field d2b = apply_multiplier(u, [](double xi, double) { return cplx(-xi * xi, 0.0); });
    CHECK(max_abs_diff(d2a, d2b) < 1e-14 * (1.0 + sup_norm(u)) * g.nx);

    // p.v. 1/(i xi) then i xi restores mean-zero fields
    SymbolTable tab = SymbolTable::build(g, Depth::finite(1.0));
    Field inv = u;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) inv.at(i, j) *= tab.dx_inv[i];
    Field back = apply_multiplier(inv, [](double xi, double) { return cplx(0.0, xi); });
    CHECK(max_abs_diff(back, u) < 1e-12);

    std::vector<cplx> bad(3);
    CHECK_THROWS_AS(apply_multiplier(u, bad), domain_error);
}

TEST_CASE("dealias: support rule and alias-free products") {
    Grid g = make_grid(64, 64, 2.0 * M_PI, 2.0 * M_PI);
    Field u = random_real_field(g, 6, g.nx / 3);
    CHECK(max_abs_diff(dealias(u), u) == 0.0);

    Field nyq(g, Space::Fourier, 0.0, Depth::finite(1.0));
    nyq.at(g.nx / 2, 0) = 1.0;
    CHECK(l2_norm(dealias(nyq)) == 0.0);

    // product of two dealiased fields vs the double-resolution oracle
    Field a = dealias(random_real_field(g, 7));
    Field b = dealias(random_real_field(g, 8));
    Field ap = to_physical(a), bp = to_physical(b);
    Field prod = ap;
    for (std::size_t m = 0; m < prod.data.size(); ++m)
        prod.data[m] = ap.data[m].real() * bp.data[m].real();
    Field prodf = dealias(to_fourier(prod));

    Grid g2 = make_grid(2 * g.nx, 2 * g.ny, g.Lx, g.Ly);
    auto upsample = [&](const Field& f) {
        Field r(g2, Space::Fourier, 0.0, f.h);
        for (int i = 0; i < g.nx; ++i) {
            const int ki = Grid::wrap(i, g.nx);
            const int i2 = ki >= 0 ? ki : ki + g2.nx;
            for (int j = 0; j < g.ny; ++j) {
                const int lj = Grid::wrap(j, g.ny);
                const int j2 = lj >= 0 ? lj : lj + g2.ny;
                r.at(i2, j2) = f.at(i, j);
            }
        }
        return r;
    };
    Field a2 = to_physical(upsample(a)), b2 = to_physical(upsample(b));
    Field p2 = a2;
    for (std::size_t m = 0; m < p2.data.size(); ++m)
        p2.data[m] = a2.data[m].real() * b2.data[m].real();
    Field p2f = to_fourier(p2);
    // truncate the oracle to the coarse, dealiased support and compare
    double worst = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        const int ki = Grid::wrap(i, g.nx);
        const int i2 = ki >= 0 ? ki : ki + g2.nx;
        for (int j = 0; j < g.ny; ++j) {
            const int lj = Grid::wrap(j, g.ny);
            const int j2 = lj >= 0 ? lj : lj + g2.ny;
            if (dealias_mask(g, i, j))
                worst = std::max(worst, std::abs(prodf.at(i, j) - p2f.at(i2, j2)));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("propagate_linear: identity, group law, phase rate, unitarity, reality") {
    Grid g = make_grid(64, 32, 2.0 * M_PI, 2.0 * M_PI);
    Field u = random_real_field(g, 9);

    CHECK(max_abs_diff(propagate_linear(u, 0.0), u) == 0.0);

    Field ab = propagate_linear(propagate_linear(u, 0.7), 0.55);
    Field c = propagate_linear(u, 1.25);
    CHECK(max_abs_diff(ab, c) < 1e-12 * (1.0 + sup_norm(u)));

    // single mode (1,0), h = 1: phase advance rate = coth(1) - 1
    Field mode(g, Space::Fourier, 0.0, Depth::finite(1.0));
    mode.at(1, 0) = 1.0;
    const double dt = 0.37;
    Field moved = propagate_linear(mode, dt);
    const double want = (coth(1.0) - 1.0) * dt;
    CHECK(std::arg(moved.at(1, 0)) == doctest::Approx(want).epsilon(1e-13));

    for (double tt : {0.1, 1.0, 10.0})
        CHECK(std::abs(l2_norm(propagate_linear(u, tt)) / l2_norm(u) - 1.0) < 1e-12);

    // reality preservation
    Field moved2 = to_physical(propagate_linear(u, 3.1));
    double imag_max = 0.0;
    for (const cplx& v : moved2.data) imag_max = std::max(imag_max, std::abs(v.imag()));
    CHECK(imag_max < 1e-12 * (1.0 + sup_norm(moved2)));

    // omega oddness on the table
    SymbolTable tab = SymbolTable::build(g, Depth::finite(1.0));
    for (int i = 1; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const int im = (g.nx - i) % g.nx;
            const int jm = (g.ny - j) % g.ny;
            if (im == 0 || i == g.nx / 2 || j == g.ny / 2) continue;
            CHECK(tab.omega[g.idx(i, j)] == doctest::Approx(-tab.omega[g.idx(im, jm)]).epsilon(1e-12));
        }
}

TEST_CASE("oscillatory kernel: oracle value, realness") {
    const double t = 5.0, x = 0.0;
    const cplx k = kernel_oscillatory(t, x, 8.0, 1e-7);
    CHECK(std::abs(k.imag()) < 1e-6);

    // independent dense-Riemann oracle with the same taper shape at a fixed
    // large cutoff, step ~ period/40 at the fastest oscillation
    const double C = 16.0;
    auto integrand = [&](double xi) -> cplx {
        const double axi = std::abs(xi);
        if (axi == 0.0 || axi >= 2.0 * C) return {0.0, 0.0};
        double w = 1.0;
        if (axi > C) {
            const double cc = std::cos(0.5 * M_PI * (axi - C) / C);
            w = cc * cc;
        }
        const double th = t * xi2coth_reduced(xi, 1.0) + x * xi;
        return std::sqrt(axi) * w * cplx(std::cos(th), std::sin(th));
    };
    const double slope = t * m_eval(2.0 * C) + std::abs(x);
    const long n = 2 * std::lround(std::ceil(4.0 * C * slope * 40.0 / (2.0 * M_PI) / 2.0));
    const double hstep = 4.0 * C / n;
    cplx acc = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double xi = -2.0 * C + i * hstep;
        const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += wgt * integrand(xi);
    }
    const cplx oracle = acc * hstep / 3.0 / std::sqrt(2.0 * M_PI);
    CHECK(std::abs(kernel_oscillatory(t, x, C, 1e-8) - oracle) < 1e-6);
    CHECK(std::abs(k - oracle) < 1e-5);
}

TEST_CASE("kernel consistency with grid propagation of a near-delta datum") {
    // uhat0 = smooth window ~ 1 on the frequencies whose stationary points
    // land in the comparison window; then u(t,x,0) ~ sqrt(LxLy)/(2 pi) K(t,x,0)
    // and |K| = (2t)^{-1/2} |k(t, x)| up to the stationary-phase envelope.
    const double t = 5.0;
    Grid g = make_grid(512, 512, 160.0, 160.0);
    Field u0(g, Space::Fourier, 0.0, Depth::finite(1.0));
    auto rampdown = [](double a, double lo, double hi) {
        if (a <= lo) return 1.0;
        if (a >= hi) return 0.0;
        const double s = (a - lo) / (hi - lo);
        return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
    };
    for (int i = 0; i < g.nx; ++i) {
        const double xi = g.xi[i];
        if (xi == 0.0) continue;
        for (int j = 0; j < g.ny; ++j) {
            const double eta = g.eta[j];
            const double w = (1.0 - rampdown(std::abs(xi), 0.3, 0.5)) * rampdown(std::abs(xi), 4.0, 6.0)
                             * rampdown(std::abs(eta / xi), 5.0, 7.0) * rampdown(std::abs(eta), 4.0, 5.0);
            u0.at(i, j) = w;
        }
    }
    Field ut = propagate_linear(u0, t);

    // dense evaluation of u(t, x, 0) by Fourier summation over the y=0 row
    std::vector<cplx> rowsum(g.nx, cplx(0, 0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) rowsum[i] += ut.at(i, j);
    auto eval_u = [&](double x) {
        cplx acc = 0.0;
        for (int i = 0; i < g.nx; ++i)
            acc += rowsum[i] * cplx(std::cos(g.xi[i] * x), std::sin(g.xi[i] * x));
        return std::abs(acc) / std::sqrt(g.Lx * g.Ly);
    };
    auto eval_k = [&](double x) { return std::abs(kernel_oscillatory(t, x, 12.0, 1e-5)); };

    // coarse scan for the envelope peaks, then refine around each argmax
    auto peak = [&](auto&& f) {
        double best = 0.0, xbest = -14.0;
        for (double x = -14.0; x <= -3.0; x += 0.1) {
            const double v = f(x);
            if (v > best) { best = v; xbest = x; }
        }
        for (double x = xbest - 0.12; x <= xbest + 0.12; x += 0.01) best = std::max(best, f(x));
        return best;
    };
    const double umax = peak(eval_u);
    const double kmax = peak(eval_k);
    const double kref = std::sqrt(g.Lx * g.Ly) / (2.0 * M_PI) * kmax / std::sqrt(2.0 * t);
    CHECK(umax == doctest::Approx(kref).epsilon(0.05));
}

TEST_CASE("dispersive decay smoke test") {
    // reduced copy of the acceptance setup: second-x-derivative Gaussian
    // (broadband, spectrum vanishing at xi = 0 so nothing rides the slow rows)
    Grid g = make_grid(512, 256, 960.0, 640.0);
    Field u0(g, Space::Physical, 0.0, Depth::finite(1.0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double x = g.x[i], y = g.y[j];
            u0.at(i, j) = std::exp(-x * x / (2.0 * 2.0 * 2.0) - y * y / (2.0 * 2.2 * 2.2));
        }
    Field f = apply_multiplier(to_fourier(u0), [](double xi, double) { return cplx(-xi * xi, 0.0); });
    pin_zero_xi(f);
    zero_nyquist(f);
    std::vector<double> ts, vals;
    for (double tt : {10.0, 20.0, 40.0, 70.0, 100.0}) {
        ts.push_back(tt);
        vals.push_back(weighted_sup_dx(propagate_linear(f, tt)));
    }
    DecayFit fit = decay_fit(ts, vals);
    CHECK(fit.slope < -0.85);
    CHECK(fit.slope > -1.15);
}
