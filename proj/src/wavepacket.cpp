#include "ccwave/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "ccwave/errors.hpp"
#include "ccwave/fourier.hpp"
#include "ccwave/symbols.hpp"

namespace ccwave {

namespace {

double bump_raw(int p, double s) {
    const double w = 1.0 - s * s;
    if (w <= 0.0) return 0.0;
    return std::exp(-std::pow(w, -p));
}

double bump_norm_constant(int p) {
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    // dense Simpson on [-1, 1]; the integrand is smooth and compactly supported
    const int n = 40000;
    const double h = 2.0 / n;
    double s = bump_raw(p, -1.0) + bump_raw(p, 1.0);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * bump_raw(p, -1.0 + i * h);
    const double val = s * h / 3.0;
    cache[p] = val;
    return val;
}

}  // namespace

double Bump::integral_raw() const { return bump_norm_constant(p); }

double Bump::value(double s) const { return bump_raw(p, s) / bump_norm_constant(p); }

double Bump::derivative(double s) const {
    const double w = 1.0 - s * s;
    if (w <= 0.0) return 0.0;
    return value(s) * (-2.0 * p * s * std::pow(w, -(p + 1)));
}

double PacketSpec::lambda_z() const {
    if (h.is_infinite()) return 1.0 / std::sqrt(t);
    return std::pow(t, -0.5) * std::pow(v, -0.25) * std::pow(1.0 + v * v, 0.125);
}

double PacketSpec::lambda_y() const {
    if (h.is_infinite()) return std::sqrt(v) / std::sqrt(t);
    return std::pow(t, -0.5) * std::pow(v, 0.25) * std::pow(1.0 + v * v, 0.125);
}

bool PacketSpec::in_sigma(double slack) const {
    const double lo = std::pow(t, -1.0 / 12.0) / slack;
    const double hi = std::pow(t, 1.0 / 12.0) * slack;
    return v > lo && v < hi;
}

PacketFrame packet_frame(const PacketSpec& spec, const Grid& grid) {
    if (!(spec.t >= 1.0)) throw domain_error("packet_frame: t >= 1 required");
    if (!(spec.v > 0.0)) throw domain_error("packet_frame: v > 0 required");
    const double lz = spec.lambda_z(), ly = spec.lambda_y();
    if (1.0 / lz > grid.Lx / 8.0 || 1.0 / ly > grid.Ly / 8.0)
        throw domain_error("packet_frame: packet support exceeds domain/8");

    const double t = spec.t;
    const double xc = t * spec.vx();  // packet center in x (at y = t v_y)
    if (std::abs(xc - grid.x0) + 1.0 / lz > 0.5 * grid.Lx
        || std::abs(t * spec.v_y - grid.y0) + 1.0 / ly > 0.5 * grid.Ly)
        throw domain_error("packet_frame: packet support leaves the domain");

    Bump b{spec.bump_p};
    PacketFrame f;
    const Depth h = spec.h;
    Field proto(grid, Space::Physical, t, h);
    f.chi = proto;
    f.phase = proto;
    f.phi_x = proto;
    f.chi_z = proto;
    f.zmtv = proto;
    f.ymtvy = proto;

    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x[i] - grid.x0;
        for (int j = 0; j < grid.ny; ++j) {
            const double y = grid.y[j] - grid.y0;
            const double z = -(x + y * y / (4.0 * t));
            const std::size_t m = grid.idx(i, j);
            const double az = lz * (z - t * spec.v);
            const double ay = ly * (y - t * spec.v_y);
            f.zmtv.data[m] = z - t * spec.v;
            f.ymtvy.data[m] = y - t * spec.v_y;
            const double bz = b.value(az), by = b.value(ay);
            f.chi.data[m] = bz * by;
            f.chi_z.data[m] = lz * b.derivative(az) * by;
            if (z > 0.0 || h.is_infinite()) {
                const double vv = z / t;
                const double phi = phase_phi(h, t, z);
                f.phase.data[m] = cplx(std::cos(phi), std::sin(phi));
                f.phi_x.data[m] = vv > 0.0 ? m_inverse(h, vv) : 0.0;
            }
        }
    }
    return f;
}

Field build_packet(const PacketSpec& spec, const Grid& grid) {
    PacketFrame f = packet_frame(spec, grid);
    Field g(grid, Space::Physical, spec.t, spec.h);
    for (std::size_t m = 0; m < g.data.size(); ++m) {
        const double px = f.phi_x.data[m].real();
        if (f.chi.data[m].real() != 0.0 && px > 0.0)
            g.data[m] = f.phase.data[m] * f.chi.data[m].real() / cplx(0.0, px);
    }
    Field gf = to_fourier(g);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) gf.at(i, j) *= cplx(0.0, grid.xi[i]);
    return to_physical(gf);
}

double l1_norm(const Field& f) {
    double s = 0.0;
    for (const cplx& v : f.data) s += std::abs(v);
    return s * f.grid.cell_area();
}

namespace {

// Packet sampled on a refine-x finer grid, restricted to the coarse lattice.
// Shared integer modes carry identical isometric coefficients, so restriction
// is a plain copy; this removes the sampling aliases of the coarse grid.
Field refined_packet_on(const PacketSpec& spec, const Grid& coarse, int refine) {
    if (refine <= 1) return build_packet(spec, coarse);
    Grid fine = make_grid(coarse.nx * refine, coarse.ny * refine, coarse.Lx, coarse.Ly);
    Field pf = to_fourier(build_packet(spec, fine));
    Field out(coarse, Space::Fourier, spec.t, spec.h);
    for (int i = 0; i < coarse.nx; ++i) {
        const int ki = Grid::wrap(i, coarse.nx);
        const int ifine = ki >= 0 ? ki : ki + fine.nx;
        for (int j = 0; j < coarse.ny; ++j) {
            const int lj = Grid::wrap(j, coarse.ny);
            const int jfine = lj >= 0 ? lj : lj + fine.ny;
            out.at(i, j) = pf.at(ifine, jfine);
        }
    }
    return to_physical(out);
}

}  // namespace

cplx gamma_test(const Field& u, const PacketSpec& spec, int refine) {
    if (std::abs(u.t - spec.t) > 1e-9 * (1.0 + std::abs(spec.t)))
        throw domain_error("gamma_test: field time does not match packet time");
    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    const Grid& g = u.grid;
    Field ux = uf;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) ux.at(i, j) *= cplx(0.0, g.xi[i]);
    Field uxp = to_physical(ux);
    Field psi = refined_packet_on(spec, g, refine);
    cplx acc(0.0, 0.0);
    for (std::size_t m = 0; m < uxp.data.size(); ++m) acc += uxp.data[m] * std::conj(psi.data[m]);
    return acc * g.cell_area();
}

double reconstruct_ux(cplx gamma, const PacketSpec& spec) {
    const double phi = phase_phi(spec.h, spec.t, spec.t * spec.v);
    const cplx e(std::cos(phi), std::sin(phi));
    const double br = std::sqrt(std::hypot(1.0, spec.v));
    return 2.0 / spec.t * br * (e * gamma).real();
}

double sample_ux(const Field& u, const PacketSpec& spec) {
    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    const Grid& g = u.grid;
    const double x0 = spec.t * spec.vx();
    const double y0 = spec.t * spec.v_y;
    cplx acc(0.0, 0.0);
    for (int i = 0; i < g.nx; ++i) {
        const double xi = g.xi[i];
        for (int j = 0; j < g.ny; ++j) {
            const double ph = xi * (x0 - g.x0) + g.eta[j] * (y0 - g.y0);
            acc += cplx(0.0, xi) * uf.at(i, j) * cplx(std::cos(ph), std::sin(ph));
        }
    }
    return acc.real() / std::sqrt(g.Lx * g.Ly);
}

OdeResidual gamma_ode_residual(const Field& u_t, const Field& u_tdt, const PacketSpec& spec) {
    const double dt = u_tdt.t - u_t.t;
    if (!(dt > 0.0)) throw domain_error("gamma_ode_residual: snapshots must be time-ordered");
    PacketSpec s1 = spec;
    s1.t = u_t.t;
    PacketSpec s2 = spec;
    s2.t = u_tdt.t;
    const cplx g1 = gamma_test(u_t, s1);
    const cplx g2 = gamma_test(u_tdt, s2);
    OdeResidual r;
    r.residual = std::abs(g2 - g1) / dt;
    const double X = x_norm(u_t).total;
    r.bound = std::pow(u_t.t, -13.0 / 12.0) * X * (1.0 + X);
    r.ratio = r.bound > 0.0 ? r.residual / r.bound : 0.0;
    return r;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& value) {
    if (t.size() != value.size() || t.size() < 5)
        throw domain_error("decay_fit: need at least 5 samples");
    const auto [mn, mx] = std::minmax_element(t.begin(), t.end());
    if (!(*mx >= 4.0 * *mn)) throw domain_error("decay_fit: samples must span a factor >= 4 in t");

    DecayFit f;
    f.n = static_cast<int>(t.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double lx = std::log(t[i]);
        const double lv = std::log(std::abs(value[i]));
        sx += lx;
        sy += lv;
        sxx += lx * lx;
        sxy += lx * lv;
    }
    const double n = static_cast<double>(f.n);
    const double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double lx = std::log(t[i]);
        const double lv = std::log(std::abs(value[i]));
        const double e = lv - (f.intercept + f.slope * lx);
        ss_res += e * e;
        ss_tot += (lv - ybar) * (lv - ybar);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    if (f.n > 2) f.stderr_slope = std::sqrt(ss_res / (n - 2.0) / (sxx - sx * sx / n));
    return f;
}

namespace {

Field spectral_dx(const Field& f) {
    Field g = f.space == Space::Fourier ? f : to_fourier(f);
    for (int i = 0; i < g.grid.nx; ++i)
        for (int j = 0; j < g.grid.ny; ++j) g.at(i, j) *= cplx(0.0, g.grid.xi[i]);
    return f.space == Space::Fourier ? g : to_physical(g);
}

// dx Ly f = y f_x - 2t P_{xi != 0} f_y  (torus convention for dx^{-1})
Field dx_ly(const Field& fphys, double t) {
    const Grid& g = fphys.grid;
    Field ff = to_fourier(fphys);
    Field fy = ff;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            fy.at(i, j) *= cplx(0.0, g.eta[j]);
            if (i == 0) fy.at(i, j) = cplx(0.0, 0.0);
        }
    Field fyp = to_physical(fy);
    Field fxp = to_physical(spectral_dx(ff));
    Field out(g, Space::Physical, fphys.t, fphys.h);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double y = g.y[j] - g.y0;
            out.at(i, j) = y * fxp.at(i, j) - 2.0 * t * fyp.at(i, j);
        }
    return out;
}

}  // namespace

MicrolocalReport microlocal_residual(const PacketSpec& spec, const Grid& grid) {
    const double t = spec.t;
    const double v = spec.v;

    // d_t Psi by centered differencing at relative step 1e-4.
    const double hstep = t * 1e-4;
    PacketSpec sp = spec, sm = spec;
    sp.t = t + hstep;
    sm.t = t - hstep;
    Field psi = build_packet(spec, grid);
    Field psi_p = build_packet(sp, grid);
    Field psi_m = build_packet(sm, grid);
    Field dt_psi(grid, Space::Physical, t, spec.h);
    for (std::size_t m = 0; m < dt_psi.data.size(); ++m)
        dt_psi.data[m] = (psi_p.data[m] - psi_m.data[m]) / (2.0 * hstep);

    // spatial part: symbol of the linear operator minus d_t is -i omega(k)
    Field spatial = to_fourier(psi);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) {
            const double xi = grid.xi[i];
            spatial.at(i, j) *= xi == 0.0 ? cplx(0.0, 0.0)
                                          : cplx(0.0, -omega(spec.h, xi, grid.eta[j]));
        }
    Field lpsi = dt_psi + to_physical(spatial);

    // four displayed leading terms
    PacketFrame f = packet_frame(spec, grid);
    const Grid& g = grid;
    auto real_field = [&](auto&& fn) {
        Field r(g, Space::Physical, t, spec.h);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) r.at(i, j) = fn(g.idx(i, j));
        return r;
    };

    Field a1 = real_field([&](std::size_t m) {
        return f.zmtv.data[m].real() * f.chi.data[m].real() / (2.0 * t);
    });

    Field a2 = real_field([&](std::size_t m) {
        return f.ymtvy.data[m].real() * f.chi.data[m].real() / (4.0 * t * t);
    });

    Field chi_x = spectral_dx(f.chi);
    Field a3 = real_field([&](std::size_t m) {
        const double px = f.phi_x.data[m].real();
        return px > 0.0 ? 0.5 * m_prime(spec.h, px) * chi_x.data[m].real() : 0.0;
    });

    Field a4(g, Space::Physical, t, spec.h);
    for (std::size_t m = 0; m < a4.data.size(); ++m) {
        const double px = f.phi_x.data[m].real();
        if (px > 0.0 && f.chi.data[m].real() != 0.0)
            a4.data[m] = f.chi.data[m].real() / (cplx(0.0, 4.0 * t * t) * px);
    }

    Field sum = -1.0 * spectral_dx(a1) - dx_ly(a2, t);
    {
        Field t3 = spectral_dx(a3);
        for (std::size_t m = 0; m < sum.data.size(); ++m)
            sum.data[m] += cplx(0.0, 1.0) * t3.data[m];
    }
    sum += dx_ly(dx_ly(a4, t), t);

    Field err = lpsi;
    for (std::size_t m = 0; m < err.data.size(); ++m)
        err.data[m] -= f.phase.data[m] * sum.data[m];

    MicrolocalReport rep;
    rep.residual_l2 = l2_norm(err);
    rep.scale = std::pow(t, -1.5) * std::pow(v, -0.75) * std::pow(std::hypot(1.0, v), -0.25);
    rep.constant = rep.residual_l2 / rep.scale;
    return rep;
}

}  // namespace ccwave
