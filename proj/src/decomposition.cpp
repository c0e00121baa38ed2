#include "ccwave/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "ccwave/errors.hpp"
#include "ccwave/fourier.hpp"

namespace ccwave {

namespace {

// Quintic smoothstep: 0 for u <= 0, 1 for u >= 1, C^2 across the edges.
double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

void require_fourier(const Field& u, const char* who) {
    if (u.space != Space::Fourier) throw domain_error(std::string(who) + ": Fourier space required");
}

void require_mean_zero(const Field& uf, const char* who) {
    double s = 0.0;
    for (int j = 0; j < uf.grid.ny; ++j) s += std::norm(uf.at(0, j));
    double tot = 0.0;
    for (const cplx& v : uf.data) tot += std::norm(v);
    if (s > 1e-24 * std::max(1.0, tot))
        throw domain_error(std::string(who) + ": field must be mean-zero in x");
}

// z = -(x + y^2/(4t)) on the centered domain
double z_coord(const Grid& g, double t, int i, int j) {
    const double yy = g.y[j] - g.y0;
    return -((g.x[i] - g.x0) + yy * yy / (4.0 * t));
}

Field multiply_coordinate(const Field& uf, const std::function<double(const Grid&, int, int)>& w) {
    Field up = to_physical(uf);
    const Grid& g = up.grid;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) up.at(i, j) *= w(g, i, j);
    return to_fourier(up);
}

}  // namespace

LPLadder LPLadder::for_grid(const Grid& g, double delta) {
    if (!(delta > 0.0)) throw config_error("LPLadder: delta must be positive");
    LPLadder l;
    l.delta = delta;
    const double ximin = 2.0 * M_PI / g.Lx;
    const double ximax = M_PI * g.nx / g.Lx;
    l.n_min = static_cast<int>(std::floor(std::log2(ximin) / delta)) - 1;
    l.n_max = static_cast<int>(std::ceil(std::log2(ximax) / delta)) + 1;
    return l;
}

double LPLadder::band(int n) const { return std::exp2(delta * n); }

double LPLadder::mask(int n, double xi) const {
    if (xi == 0.0) return 0.0;
    const double s = std::log2(std::abs(xi)) / delta - n;
    return smoothstep(s + 1.0) - smoothstep(s);
}

std::vector<int> LPLadder::bands() const {
    std::vector<int> b;
    for (int n = n_min; n <= n_max; ++n) b.push_back(n);
    return b;
}

Field lp_project(const Field& u, const LPLadder& ladder, int n) {
    require_fourier(u, "lp_project");
    Field r = u;
    const Grid& g = u.grid;
    for (int i = 0; i < g.nx; ++i) {
        const double m = ladder.mask(n, g.xi[i]);
        for (int j = 0; j < g.ny; ++j) r.at(i, j) *= m;
    }
    return r;
}

Field pm_project(const Field& u, int sign) {
    require_fourier(u, "pm_project");
    Field r = u;
    const Grid& g = u.grid;
    for (int i = 0; i < g.nx; ++i) {
        const bool keep = sign > 0 ? g.xi[i] > 0.0 : g.xi[i] < 0.0;
        if (!keep)
            for (int j = 0; j < g.ny; ++j) r.at(i, j) = cplx(0.0, 0.0);
    }
    return r;
}

Field z_transform(const Field& u, double t, ZDirection dir) {
    if (!(t > 0.0)) throw domain_error("z_transform: t must be positive");
    Field up = u.space == Space::Physical ? u : to_physical(u);
    const Grid& g = up.grid;
    forward_rows_inplace(g, up.data.data());
    const double sgn = dir == ZDirection::to_z ? -1.0 : 1.0;
    for (int i = 0; i < g.nx; ++i) {
        const double xi = g.xi[i];
        for (int j = 0; j < g.ny; ++j) {
            const double yy = g.y[j] - g.y0;
            const double ph = sgn * xi * yy * yy / (4.0 * t);
            up.at(i, j) *= cplx(std::cos(ph), std::sin(ph));
        }
    }
    backward_rows_inplace(g, up.data.data());
    const double inv = 1.0 / g.nx;
    for (cplx& v : up.data) v *= inv;
    if (u.space == Space::Fourier) return to_fourier(up);
    return up;
}

double hyp_window(const Depth& h, double N, double v) {
    if (v <= 0.0) return 0.0;
    const double c = std::log2(m_eval(h, N));
    const double l = std::log2(v);
    return smoothstep(l - c + 2.0) * (1.0 - smoothstep(l - c - 1.0));
}

Field SplitField::hyp_sum() const {
    Field s = ell;  // shape template
    for (cplx& v : s.data) v = cplx(0.0, 0.0);
    for (const BandPiece& b : hyp) {
        for (std::size_t m = 0; m < s.data.size(); ++m) s.data[m] += b.plus.data[m] + b.minus.data[m];
    }
    return s;
}

SplitField hyperbolic_elliptic_split(const Field& u, double t, const LPLadder& ladder) {
    if (!(t >= 1.0)) throw domain_error("hyperbolic_elliptic_split: t >= 1 required");
    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    Field up = u.space == Space::Physical ? u : to_physical(u);
    const Grid& g = u.grid;

    SplitField out;
    out.t = t;
    out.threshold = u.h.is_infinite() ? std::pow(t, -0.5) : std::pow(t, -1.0 / 3.0);

    // v = z/t per grid point
    std::vector<double> v(g.size());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) v[g.idx(i, j)] = z_coord(g, t, i, j) / t;

    Field accum(g, Space::Physical, up.t, u.h);
    for (int n : ladder.bands()) {
        const double N = ladder.band(n);
        if (N < out.threshold) continue;
        Field un = lp_project(uf, ladder, n);
        BandPiece piece;
        piece.n = n;
        piece.N = N;
        piece.plus = to_physical(pm_project(un, +1));
        piece.minus = to_physical(pm_project(un, -1));
        bool nonzero = false;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) {
                const std::size_t m = g.idx(i, j);
                const double w = hyp_window(u.h, N, v[m]);
                piece.plus.data[m] *= w;
                piece.minus.data[m] *= w;
                if (w != 0.0 && (std::norm(piece.plus.data[m]) > 0.0 || std::norm(piece.minus.data[m]) > 0.0))
                    nonzero = true;
            }
        if (!nonzero) continue;
        for (std::size_t m = 0; m < accum.data.size(); ++m)
            accum.data[m] += piece.plus.data[m] + piece.minus.data[m];
        out.hyp.push_back(std::move(piece));
    }
    out.ell = up;
    for (std::size_t m = 0; m < out.ell.data.size(); ++m) out.ell.data[m] -= accum.data[m];
    return out;
}

Field apply_vector_field(const Field& u, double t, VectorField which) {
    require_fourier(u, "apply_vector_field");
    const Grid& g = u.grid;

    auto dx_op = [&](const Field& f) {
        Field r = f;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) r.at(i, j) *= cplx(0.0, g.xi[i]);
        return r;
    };
    auto dy_op = [&](const Field& f) {
        Field r = f;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) r.at(i, j) *= cplx(0.0, g.eta[j]);
        return r;
    };

    switch (which) {
        case VectorField::Ly: {
            require_mean_zero(u, "apply_vector_field(Ly)");
            // y u - 2t dx^{-1} dy u
            Field a = multiply_coordinate(u, [](const Grid& gg, int i, int j) {
                (void)i;
                return gg.y[j] - gg.y0;
            });
            Field b = u;
            for (int i = 0; i < g.nx; ++i) {
                const double xi = g.xi[i];
                for (int j = 0; j < g.ny; ++j)
                    b.at(i, j) *= xi == 0.0 ? 0.0 : -2.0 * t * g.eta[j] / xi;
            }
            return a + b;
        }
        case VectorField::Lxh: {
            require_mean_zero(u, "apply_vector_field(Lxh)");
            // x u + t (m(xi) + eta^2/xi^2) u
            Field a = multiply_coordinate(u, [](const Grid& gg, int i, int j) {
                (void)j;
                return gg.x[i] - gg.x0;
            });
            Field b = u;
            for (int i = 0; i < g.nx; ++i) {
                const double xi = g.xi[i];
                const double mm = xi == 0.0 ? 0.0 : m_eval(u.h, xi);
                for (int j = 0; j < g.ny; ++j) {
                    const double eta = g.eta[j];
                    b.at(i, j) *= xi == 0.0 ? 0.0 : t * (mm + eta * eta / (xi * xi));
                }
            }
            return a + b;
        }
        case VectorField::J:
            return apply_vector_field(dx_op(u), t, VectorField::Lxh)
                 + apply_vector_field(dy_op(u), t, VectorField::Ly);
        case VectorField::Lz: {
            if (!(t > 0.0)) throw domain_error("apply_vector_field(Lz): t > 0 required");
            Field a = multiply_coordinate(u, [t](const Grid& gg, int i, int j) {
                return z_coord(gg, t, i, j);
            });
            Field b = u;
            for (int i = 0; i < g.nx; ++i) {
                const double mm = g.xi[i] == 0.0 ? 0.0 : m_eval(u.h, g.xi[i]);
                for (int j = 0; j < g.ny; ++j) b.at(i, j) *= -t * mm;
            }
            return a + b;
        }
        case VectorField::LzPlus:
        case VectorField::LzMinus: {
            if (!(t > 0.0)) throw domain_error("apply_vector_field(Lz+-): t > 0 required");
            // m^{-1}(z/t) u +/- i u_x; the multiplier extends by 0 to v <= 0.
            Field up = to_physical(u);
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j) {
                    const double v = z_coord(g, t, i, j) / t;
                    up.at(i, j) *= v > 0.0 ? m_inverse(u.h, v) : 0.0;
                }
            Field a = to_fourier(up);
            Field b = dx_op(u);
            const cplx unit = which == VectorField::LzPlus ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
            for (std::size_t m = 0; m < a.data.size(); ++m) a.data[m] += unit * b.data[m];
            return a;
        }
    }
    throw domain_error("apply_vector_field: unknown operator");
}

XNormReport x_norm(const Field& u) {
    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    const Grid& g = u.grid;
    const double t = u.t;

    auto sq = [](const Field& f) {
        const double n = l2_norm(f);
        return n * n;
    };

    XNormReport r;
    r.l2 = sq(uf);

    Field dx4 = uf;
    for (int i = 0; i < g.nx; ++i) {
        const double s = std::pow(g.xi[i], 4);
        for (int j = 0; j < g.ny; ++j) dx4.at(i, j) *= s;
    }
    r.dx4 = sq(dx4);

    Field dxu = uf;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) dxu.at(i, j) *= cplx(0.0, g.xi[i]);
    Field ly2 = apply_vector_field(apply_vector_field(dxu, t, VectorField::Ly), t, VectorField::Ly);
    r.ly2dx = sq(ly2);

    Field ju = apply_vector_field(uf, t, VectorField::J);
    r.j = sq(ju);

    r.total = std::sqrt(r.l2 + r.dx4 + r.ly2dx + r.j);
    return r;
}

double z_norm(const Field& u, int k) {
    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    const Grid& g = u.grid;
    auto sq = [](const Field& f) {
        const double n = l2_norm(f);
        return n * n;
    };
    double total = sq(uf);

    Field dxk = uf;
    for (int i = 0; i < g.nx; ++i) {
        const double s = std::pow(std::abs(g.xi[i]), k);
        for (int j = 0; j < g.ny; ++j) dxk.at(i, j) *= s;
    }
    total += sq(dxk);

    Field dxu = uf;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) dxu.at(i, j) *= cplx(0.0, g.xi[i]);
    Field ly2 = apply_vector_field(apply_vector_field(dxu, u.t, VectorField::Ly), u.t, VectorField::Ly);
    total += sq(ly2);

    return std::sqrt(total);
}

namespace {

double bracket(double x) { return std::hypot(1.0, x); }  // <x>

}  // namespace

BoundRatios pointwise_bound_report(const Field& u, double t, const SplitField& split) {
    if (!(t >= 1.0)) throw domain_error("pointwise_bound_report: t >= 1 required");
    const Grid& g = u.grid;
    const bool inf = u.h.is_infinite();

    BoundRatios r;
    r.x_norm_value = x_norm(u).total;
    if (r.x_norm_value == 0.0) return r;

    Field hyp = split.hyp_sum();  // physical, complex (real up to rounding)
    Field hyp_x = to_physical(apply_multiplier(to_fourier(hyp), [&](double xi, double) {
        return cplx(0.0, xi);
    }));
    Field ell_x = to_physical(apply_multiplier(to_fourier(split.ell), [&](double xi, double) {
        return cplx(0.0, xi);
    }));

    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t m = g.idx(i, j);
            const double v = z_coord(g, t, i, j) / t;
            if (v > 0.0) {
                // hyperbolic profiles: t^{-1} v^{-3/8} <v>^{-7/8} (finite),
                // t^{-1} v^{-1/4} <v>^{-1} (infinite); derivative analogues.
                const double pu = inf ? std::pow(v, -0.25) / bracket(v)
                                      : std::pow(v, -0.375) * std::pow(bracket(v), -0.875);
                const double px = inf ? std::pow(v, 0.75) / bracket(v)
                                      : std::pow(v, 0.125) * std::pow(bracket(v), -0.375);
                r.u_hyp = std::max(r.u_hyp, std::abs(hyp.data[m]) * t / pu);
                r.ux_hyp = std::max(r.ux_hyp, std::abs(hyp_x.data[m]) * t / px);
            }
            const double pe = inf
                ? std::pow(t, -0.875) * std::pow(bracket(std::sqrt(t) * v), -0.75)
                      * (1.0 + std::log(bracket(std::sqrt(t) * v)))
                : std::pow(t, -0.75) * std::pow(bracket(std::cbrt(t * t) * v), -0.75)
                      * (1.0 + std::log(bracket(std::cbrt(t * t) * v)));
            const double pex = inf
                ? std::pow(t, -1.125) * std::pow(bracket(v / std::sqrt(t)), -5.0 / 12.0)
                : std::pow(t, -13.0 / 12.0) * std::pow(bracket(std::cbrt(t * t) * v), -0.25)
                      * std::pow(bracket(std::sqrt(t) * v), 0.25)
                      * std::pow(bracket(v / std::sqrt(t)), -5.0 / 12.0);
            r.u_ell = std::max(r.u_ell, std::abs(split.ell.data[m]) / pe);
            r.ux_ell = std::max(r.ux_ell, std::abs(ell_x.data[m]) / pex);
        }

    const double gain = inf ? std::sqrt(t) : std::cbrt(t);
    r.elliptic_gain = l2_norm(ell_x) * gain / r.x_norm_value;
    r.u_hyp /= r.x_norm_value;
    r.ux_hyp /= r.x_norm_value;
    r.u_ell /= r.x_norm_value;
    r.ux_ell /= r.x_norm_value;
    return r;
}

SobolevRatios sobolev_check(const Field& f) {
    Field ff = f.space == Space::Fourier ? f : to_fourier(f);
    const Grid& g = f.grid;

    Field fx = ff, fyy = ff;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            fx.at(i, j) *= cplx(0.0, g.xi[i]);
            fyy.at(i, j) *= -g.eta[j] * g.eta[j];
        }
    const double n0 = l2_norm(ff);
    const double n1 = l2_norm(fx);
    const double n2 = l2_norm(fyy);
    if (n0 == 0.0 || n1 == 0.0 || n2 == 0.0)
        throw domain_error("sobolev_check: vanishing denominator");

    Field fp = to_physical(ff);
    const double sup = sup_norm(fp);

    SobolevRatios r;
    r.sup_ratio = sup / (std::pow(n0, 0.25) * std::sqrt(n1) * std::pow(n2, 0.25));

    // Holder alpha = 1/4 seminorm, approximated over dyadic axis-aligned offsets.
    double hold = 0.0;
    for (int d = 1; d <= g.nx / 4; d *= 2) {
        double mx = 0.0;
        for (int i = 0; i < g.nx; ++i) {
            const int i2 = (i + d) % g.nx;
            for (int j = 0; j < g.ny; ++j)
                mx = std::max(mx, std::abs(fp.at(i2, j).real() - fp.at(i, j).real()));
        }
        hold = std::max(hold, mx / std::pow(d * g.dx(), 0.25));
    }
    for (int d = 1; d <= g.ny / 4; d *= 2) {
        double mx = 0.0;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) {
                const int j2 = (j + d) % g.ny;
                mx = std::max(mx, std::abs(fp.at(i, j2).real() - fp.at(i, j).real()));
            }
        hold = std::max(hold, mx / std::pow(d * g.dy(), 0.25));
    }
    const double alpha = 0.25;
    const double denom = (std::pow(n0, 0.25 - alpha) * std::pow(n1, alpha)
                          + std::pow(n0, 0.25 - 0.5 * alpha) * std::pow(n2, 0.5 * alpha))
                         * std::sqrt(n1) * std::pow(n2, 0.25);
    r.holder_ratio = hold / denom;
    return r;
}

SigmaBounds sigma_region(double t) {
    if (!(t > 0.0)) throw domain_error("sigma_region: t must be positive");
    return {std::pow(t, -1.0 / 12.0), std::pow(t, 1.0 / 12.0)};
}

}  // namespace ccwave
