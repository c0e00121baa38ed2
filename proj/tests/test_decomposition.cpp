#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ccwave/decomposition.hpp"
#include "ccwave/errors.hpp"
#include "ccwave/experiments.hpp"
#include "ccwave/fourier.hpp"
#include "ccwave/solver.hpp"
#include "test_support.hpp"

using namespace ccwave;
using ccwave::testing::max_abs_diff;
using ccwave::testing::random_real_field;

namespace {

// random band-limited field killed near the domain boundary, so coordinate
// weights act cleanly (no sawtooth jumps under the data)
Field localized_random(const Grid& g, std::uint64_t seed) {
    Field u = to_physical(random_real_field(g, seed, 6));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double sx = 2.0 * (g.x[i] - g.x0) / g.Lx;   // in [-1, 1)
            const double sy = 2.0 * (g.y[j] - g.y0) / g.Ly;
            const double wx = sx * sx < 0.4 ? std::exp(-sx * sx / (0.4 - sx * sx)) : 0.0;
            const double wy = sy * sy < 0.4 ? std::exp(-sy * sy / (0.4 - sy * sy)) : 0.0;
            u.at(i, j) *= wx * wy;
        }
    Field uf = to_fourier(u);
    pin_zero_xi(uf);
    zero_nyquist(uf);
    return uf;
}

}  // namespace

TEST_CASE("LP ladder: partition of unity, band content, pm projections") {
    Grid g = make_grid(128, 64, 8.0 * M_PI, 4.0 * M_PI);
    LPLadder ladder = LPLadder::for_grid(g);

    Field u = random_real_field(g, 31);
    Field sum(g, Space::Fourier, 0.0, u.h);
    for (int n : ladder.bands()) sum += lp_project(u, ladder, n);
    CHECK(max_abs_diff(sum, u) < 1e-12 * (1.0 + sup_norm(u)));

    // real u: u_N = 2 Re u_N^+
    Field un = lp_project(u, ladder, 0);
    Field unp = to_physical(pm_project(un, +1));
    Field unphys = to_physical(un);
    double worst = 0.0;
    for (std::size_t m = 0; m < unp.data.size(); ++m)
        worst = std::max(worst, std::abs(2.0 * unp.data[m].real() - unphys.data[m].real()));
    CHECK(worst < 1e-12 * (1.0 + sup_norm(unphys)));

    // spike at |xi| = 1 lands entirely in the N = 1 band
    Field spike(g, Space::Fourier, 0.0, u.h);
    int i1 = 0;
    for (int i = 0; i < g.nx; ++i)
        if (std::abs(g.xi[i] - 1.0) < 1e-12) i1 = i;
    spike.at(i1, 3) = 1.0;
    CHECK(l2_norm(lp_project(spike, ladder, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    for (int n : ladder.bands())
        if (n != 0) CHECK(l2_norm(lp_project(spike, ladder, n)) < 1e-12);
}

TEST_CASE("z transform: phase formula and roundtrip") {
    Grid g = make_grid(64, 64, 2.0 * M_PI, 2.0 * M_PI);
    const double t = 3.0;

    // single mode (1,0): output = input * exp(-i xi y^2/(4t)) row phases
    Field mode(g, Space::Physical, t, Depth::finite(1.0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) mode.at(i, j) = cplx(std::cos(g.x[i]), std::sin(g.x[i]));
    Field w = z_transform(mode, t, ZDirection::to_z);
    double worst = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double ph = -g.y[j] * g.y[j] / (4.0 * t);
            const cplx want = mode.at(i, j) * cplx(std::cos(ph), std::sin(ph));
            worst = std::max(worst, std::abs(w.at(i, j) - want));
        }
    CHECK(worst < 1e-12);

    Field r = to_physical(random_real_field(g, 17));
    Field rt = z_transform(z_transform(r, t, ZDirection::to_z), t, ZDirection::from_z);
    CHECK(max_abs_diff(rt, r) < 1e-10);
    CHECK_THROWS_AS(z_transform(r, -1.0, ZDirection::to_z), domain_error);
}

TEST_CASE("hyperbolic/elliptic split: reconstruction, support, packet capture") {
    Grid g = make_grid(256, 128, 480.0, 320.0);
    const double t = 50.0;
    Field u0 = gaussian_datum(g, Depth::finite(1.0), 0.01, 1.0, 5.0, 7.0);
    Field ut = to_physical(propagate_linear(to_fourier(u0), t));
    LPLadder ladder = LPLadder::for_grid(g);

    SplitField split = hyperbolic_elliptic_split(ut, t, ladder);
    CHECK(split.threshold == doctest::Approx(std::pow(t, -1.0 / 3.0)));

    // exact reconstruction
    Field rec = split.hyp_sum();
    rec += split.ell;
    CHECK(max_abs_diff(rec, ut) < 1e-14 * (1.0 + sup_norm(ut)) * 100);

    // hyperbolic pieces vanish identically where v <= 0
    for (const BandPiece& b : split.hyp)
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) {
                const double y = g.y[j];
                const double v = -((g.x[i]) + y * y / (4.0 * t)) / t;
                if (v <= 0.0) {
                    CHECK(b.plus.at(i, j) == cplx(0.0, 0.0));
                    CHECK(b.minus.at(i, j) == cplx(0.0, 0.0));
                }
            }

    // >= 90% of the carrier band mass lands in the hyperbolic piece at t = 50
    Field un = lp_project(to_fourier(ut), ladder, 0);  // N = 1 band (carrier)
    double hyp_band = 0.0;
    for (const BandPiece& b : split.hyp)
        if (b.n == 0) {
            Field s = b.plus;
            for (std::size_t m = 0; m < s.data.size(); ++m) s.data[m] += b.minus.data[m];
            hyp_band = l2_norm(s);
        }
    CHECK(hyp_band >= 0.9 * l2_norm(un));

    // datum parked in the z < 0 half-plane: hyp content only from mask tails
    Field neg(g, Space::Physical, t, Depth::finite(1.0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double x = g.x[i] - 60.0, y = g.y[j];
            neg.at(i, j) = std::cos(g.x[i]) * std::exp(-(x * x + y * y) / 18.0);
        }
    {
        Field nf = to_fourier(neg);
        pin_zero_xi(nf);
        neg = to_physical(nf);
    }
    SplitField sneg = hyperbolic_elliptic_split(neg, t, ladder);
    CHECK(l2_norm(sneg.hyp_sum()) < 0.01 * l2_norm(neg));
}

TEST_CASE("vector fields: t = 0 reduction, flow commutation, Lz identity") {
    Grid g = make_grid(128, 128, 20.0 * M_PI, 20.0 * M_PI);
    Field u = localized_random(g, 77);

    // Ly at t = 0 is multiplication by y
    Field a = apply_vector_field(u, 0.0, VectorField::Ly);
    Field up = to_physical(u);
    Field yu = up;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) yu.at(i, j) *= g.y[j];
    CHECK(max_abs_diff(to_physical(a), yu) < 1e-12 * (1.0 + sup_norm(yu)));

    // commutation with the linear flow on localized band-limited data
    const double T = 5.0;
    Grid gb = make_grid(256, 256, 40.0 * M_PI, 40.0 * M_PI);
    Field ub = to_fourier(gaussian_datum(gb, Depth::finite(1.0), 1.0, 1.0, 3.0, 3.0));
    for (VectorField which : {VectorField::Ly, VectorField::J}) {
        Field lhs = apply_vector_field(propagate_linear(ub, T), T, which);
        Field rhs = propagate_linear(apply_vector_field(ub, 0.0, which), T);
        CHECK(l2_norm(lhs - rhs) < 1e-8 * std::max(1.0, l2_norm(rhs)));
    }

    // Lz dx = -(J + (1/4t) Ly^2 dx + 1/2) on localized mean-zero data
    const double t = 2.5;
    auto dx = [&](const Field& f) {
        Field r = f;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) r.at(i, j) *= cplx(0.0, g.xi[i]);
        return r;
    };
    Field lhs = apply_vector_field(dx(u), t, VectorField::Lz);
    Field rhs = apply_vector_field(u, t, VectorField::J);
    Field ly1 = apply_vector_field(dx(u), t, VectorField::Ly);
    Field ly2 = apply_vector_field(ly1, t, VectorField::Ly);
    for (std::size_t m = 0; m < rhs.data.size(); ++m)
        rhs.data[m] = -(rhs.data[m] + ly2.data[m] / (4.0 * t) + 0.5 * u.data[m]);
    CHECK(l2_norm(lhs - rhs) < 1e-10 * std::max(1.0, l2_norm(lhs)));

    // Lz+/Lz-: phase conjugation identity d_x(e^{-i phi} f) = -i e^{-i phi} Lz+ f
    // is exercised in the wavepacket tests where phi is available.
    CHECK_THROWS_AS(apply_vector_field(to_physical(u), t, VectorField::Ly), domain_error);
}

TEST_CASE("x norm: zero field, analytic oracle at t = 0, Z^k domination") {
    Grid g = make_grid(256, 128, 40.0 * M_PI, 20.0 * M_PI);
    Field zero(g, Space::Fourier, 0.0, Depth::finite(1.0));
    CHECK(x_norm(zero).total == 0.0);

    // datum sin(k x) Gx(x) Gy(y): odd in x, so every row is exactly mean-zero
    const double k0 = 2.0, sx = 2.0, sy = 3.0;
    Field u(g, Space::Physical, 0.0, Depth::finite(1.0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double x = g.x[i], y = g.y[j];
            u.at(i, j) = std::sin(k0 * x) * std::exp(-0.5 * x * x / (sx * sx))
                         * std::exp(-0.5 * y * y / (sy * sy));
        }

    // analytic oracle: d_x^n [sin(kx) e^{-x^2/2s^2}] via complex Hermite form
    auto dxn = [&](double x, int n) {
        const cplx i1(0.0, 1.0);
        const cplx a = i1 * k0 * sx * sx;  // g = C exp(-(x-a)^2/(2 s^2))
        const double C = std::exp(-0.5 * k0 * k0 * sx * sx);
        const cplx w = (x - a) / (sx * std::sqrt(2.0));
        cplx H;
        switch (n) {
            case 0: H = 1.0; break;
            case 1: H = 2.0 * w; break;
            case 4: H = 16.0 * w * w * w * w - 48.0 * w * w + 12.0; break;
            default: H = 0.0;
        }
        const cplx gg = C * std::exp(-w * w);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        (void)sign;
        const cplx val = std::pow(-1.0 / (sx * std::sqrt(2.0)), n) * H * gg;
        return val.imag();  // Im of d_x^n (e^{ikx} e^{-x^2/2s^2})
    };

    double l2 = 0.0, dx4 = 0.0, y2dx = 0.0, scal = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double x = g.x[i], y = g.y[j];
            const double gy = std::exp(-0.5 * y * y / (sy * sy));
            const double f0 = dxn(x, 0) * gy;
            const double f1 = dxn(x, 1) * gy;
            const double f4 = dxn(x, 4) * gy;
            const double fy = dxn(x, 0) * gy * (-y / (sy * sy));
            l2 += f0 * f0;
            dx4 += f4 * f4;
            y2dx += y * y * y * y * f1 * f1;
            const double sc = x * f1 + y * fy;
            scal += sc * sc;
        }
    const double area = g.cell_area();
    const double oracle = std::sqrt((l2 + dx4 + y2dx + scal) * area);

    XNormReport rep = x_norm(u);
    CHECK(std::abs(rep.total - oracle) < 1e-8 * oracle);

    // Z^k components are a subset of the X components: Z4 <= X
    Field w = localized_random(g, 5);
    w.t = 3.0;
    CHECK(z_norm(w, 4) <= x_norm(w).total * (1.0 + 1e-12));
}

TEST_CASE("pointwise bound report: zero field, linear-run ratios") {
    Grid g = make_grid(256, 128, 480.0, 320.0);
    LPLadder ladder = LPLadder::for_grid(g);
    Field zero(g, Space::Physical, 10.0, Depth::finite(1.0));
    SplitField zs = hyperbolic_elliptic_split(zero, 10.0, ladder);
    BoundRatios zr = pointwise_bound_report(zero, 10.0, zs);
    CHECK(zr.u_hyp == 0.0);
    CHECK(zr.ux_ell == 0.0);

    Field u0f = to_fourier(gaussian_datum(g, Depth::finite(1.0), 0.01, 1.0, 5.0, 7.0));
    auto ratios_at = [&](double t) {
        Field ut = to_physical(propagate_linear(u0f, t - u0f.t));
        SplitField s = hyperbolic_elliptic_split(ut, t, ladder);
        return pointwise_bound_report(ut, t, s);
    };
    BoundRatios r10 = ratios_at(10.0);
    BoundRatios r50 = ratios_at(50.0);
    for (double v : {r10.u_hyp, r10.ux_hyp, r10.u_ell, r10.ux_ell, r10.elliptic_gain}) {
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
    CHECK(r50.u_hyp <= 1.2 * r10.u_hyp);
    CHECK(r50.ux_hyp <= 1.2 * r10.ux_hyp);
    CHECK(r50.u_ell <= 1.2 * r10.u_ell);
    CHECK(r50.ux_ell <= 1.2 * r10.ux_ell);

    // elliptic gain stays bounded along the run
    double gmax = 0.0;
    for (double t : {1.0, 3.0, 10.0, 30.0, 100.0}) {
        if (t < 1.0) continue;
        gmax = std::max(gmax, ratios_at(std::max(t, 1.0)).elliptic_gain);
    }
    CHECK(gmax < 1.0);  // recorded headroom for this reference run
}

TEST_CASE("Sobolev and Holder ratio checks") {
    Grid g = make_grid(128, 128, 16.0 * M_PI, 16.0 * M_PI);
    Field gauss(g, Space::Physical, 0.0, Depth::finite(1.0));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double x = g.x[i], y = g.y[j];
            gauss.at(i, j) = std::sin(x) * std::exp(-(x * x + y * y) / 8.0);
        }
    SobolevRatios sr = sobolev_check(gauss);
    CHECK(sr.sup_ratio > 0.0);
    CHECK(sr.sup_ratio < 2.0);   // recorded constant with headroom
    CHECK(sr.holder_ratio > 0.0);
    CHECK(sr.holder_ratio < 2.0);

    // anisotropic rescaling leaves the sup ratio invariant
    Grid g2 = make_grid(128, 128, 2.0 * 16.0 * M_PI, 0.5 * 16.0 * M_PI);
    Field resc(g2, Space::Physical, 0.0, Depth::finite(1.0));
    resc.data = gauss.data;
    CHECK(sobolev_check(resc).sup_ratio == doctest::Approx(sr.sup_ratio).epsilon(1e-12));

    Field rnd = to_physical(random_real_field(g, 15, 10));
    CHECK(std::isfinite(sobolev_check(rnd).sup_ratio));

    Field zero(g, Space::Physical, 0.0, Depth::finite(1.0));
    CHECK_THROWS_AS(sobolev_check(zero), domain_error);
}

TEST_CASE("Sigma_t region is monotone in t") {
    SigmaBounds a = sigma_region(2.0);
    SigmaBounds b = sigma_region(20.0);
    CHECK(b.lo < a.lo);
    CHECK(b.hi > a.hi);
    CHECK(a.lo < a.hi);
}
