#include "ccwave/solver.hpp"

#include <algorithm>
#include <cmath>

#include "ccwave/errors.hpp"
#include "ccwave/fourier.hpp"

namespace ccwave {

double default_dt(const Grid& g, const Depth& h) {
    double mx = 0.0;
    for (int i = 1; i < g.nx; ++i) {
        if (3 * std::abs(Grid::wrap(i, g.nx)) > g.nx) continue;
        for (int j = 0; j < g.ny; ++j) {
            if (3 * std::abs(Grid::wrap(j, g.ny)) > g.ny) continue;
            mx = std::max(mx, std::abs(omega(h, g.xi[i], g.eta[j])));
        }
    }
    if (mx == 0.0) throw config_error("default_dt: degenerate grid");
    return 0.5 / mx;
}

Stepper::Stepper(const Grid& g, const Depth& h, double dt, bool dealias_on, double blowup_threshold,
                 bool nonlinear)
    : grid_(g), table_(SymbolTable::build(g, h)), dt_(dt), dealias_(dealias_on), nonlinear_(nonlinear),
      blowup_(blowup_threshold) {
    const std::size_t n = g.size();
    e_half_.resize(n);
    e_full_.resize(n);
    e_half_conj_.resize(n);
    e_full_conj_.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double ph = 0.5 * dt * table_.omega[m];
        e_half_[m] = cplx(std::cos(ph), std::sin(ph));
        e_half_conj_[m] = std::conj(e_half_[m]);
        e_full_[m] = e_half_[m] * e_half_[m];
        e_full_conj_[m] = std::conj(e_full_[m]);
    }
    ixi_half_.resize(n);
    mask_.resize(n);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t m = g.idx(i, j);
            ixi_half_[m] = 0.5 * g.xi[i];
            mask_[m] = (!dealias_ || dealias_mask(g, i, j)) && i != 0 ? 1 : 0;
        }
    buf_a_.resize(n);
    buf_b_.resize(n);
    k1_.resize(n);
    k2_.resize(n);
    k3_.resize(n);
    k4_.resize(n);
}

// out = (i xi / 2) fft(ifft(in)^2), with 2/3 masking of input and output.
void Stepper::nonlinear(const std::vector<cplx>& in, std::vector<cplx>& out) const {
    const std::size_t n = grid_.size();
    if (!nonlinear_) {
        std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
        return;
    }
    for (std::size_t m = 0; m < n; ++m) buf_b_[m] = mask_[m] ? in[m] : cplx(0.0, 0.0);
    backward_inplace(grid_, buf_b_.data());
    for (std::size_t m = 0; m < n; ++m) {
        const double re = buf_b_[m].real();
        buf_b_[m] = cplx(re * re, 0.0);
    }
    forward_inplace(grid_, buf_b_.data());
    for (std::size_t m = 0; m < n; ++m)
        out[m] = mask_[m] ? cplx(-ixi_half_[m] * buf_b_[m].imag(), ixi_half_[m] * buf_b_[m].real())
                          : cplx(0.0, 0.0);
}

void Stepper::check_finite(const Field& u) const {
    for (const cplx& v : u.data)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > blowup_)
            throw blowup_error("stepper: state exceeded blow-up threshold", u.t);
}

void Stepper::step(Field& u) const {
    if (u.space != Space::Fourier) throw domain_error("step: Fourier space required");
    if (!u.grid.same_shape(grid_) || u.h != table_.h) throw domain_error("step: grid/depth mismatch");
    const std::size_t n = grid_.size();
    std::vector<cplx>& v = u.data;  // interaction-picture state at t_n

    nonlinear(v, k1_);

    for (std::size_t m = 0; m < n; ++m) buf_a_[m] = e_half_[m] * (v[m] + 0.5 * dt_ * k1_[m]);
    nonlinear(buf_a_, k2_);
    for (std::size_t m = 0; m < n; ++m) k2_[m] *= e_half_conj_[m];

    for (std::size_t m = 0; m < n; ++m) buf_a_[m] = e_half_[m] * (v[m] + 0.5 * dt_ * k2_[m]);
    nonlinear(buf_a_, k3_);
    for (std::size_t m = 0; m < n; ++m) k3_[m] *= e_half_conj_[m];

    for (std::size_t m = 0; m < n; ++m) buf_a_[m] = e_full_[m] * (v[m] + dt_ * k3_[m]);
    nonlinear(buf_a_, k4_);
    for (std::size_t m = 0; m < n; ++m) k4_[m] *= e_full_conj_[m];

    for (std::size_t m = 0; m < n; ++m)
        v[m] = e_full_[m] * (v[m] + (dt_ / 6.0) * (k1_[m] + 2.0 * k2_[m] + 2.0 * k3_[m] + k4_[m]));
    for (int j = 0; j < grid_.ny; ++j) v[grid_.idx(0, j)] = cplx(0.0, 0.0);

    u.t += dt_;
    check_finite(u);
}

Field step(const Field& u, const SolverConfig& cfg) {
    const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(u.grid, u.h);
    Stepper s(u.grid, u.h, dt, cfg.dealias, cfg.blowup_threshold, cfg.nonlinear);
    Field r = u.space == Space::Fourier ? u : to_fourier(u);
    s.step(r);
    return r;
}

DiagnosticsRecord diagnose(const Field& u_physical) {
    const Field& u = u_physical;
    if (u.space != Space::Physical) throw domain_error("diagnose: physical space required");
    DiagnosticsRecord d;
    d.t = u.t;
    d.mass = mass(u);
    d.energy = energy(u);

    Field uf = to_fourier(u);
    Field ux = uf;
    for (int i = 0; i < u.grid.nx; ++i)
        for (int j = 0; j < u.grid.ny; ++j) ux.at(i, j) *= cplx(0.0, u.grid.xi[i]);
    d.sup_ux = sup_norm(to_physical(ux));

    // mass fraction outside the centered half-domain
    double inside = 0.0, total = 0.0;
    const Grid& g = u.grid;
    for (int i = 0; i < g.nx; ++i) {
        const bool xin = std::abs(g.x[i] - g.x0) <= 0.25 * g.Lx;
        for (int j = 0; j < g.ny; ++j) {
            const double w = std::norm(u.at(i, j));
            total += w;
            if (xin && std::abs(g.y[j] - g.y0) <= 0.25 * g.Ly) inside += w;
        }
    }
    d.outside_mass_fraction = total > 0.0 ? 1.0 - inside / total : 0.0;
    d.wrapped = d.outside_mass_fraction > 1e-6;
    return d;
}

EvolveResult evolve(const Field& u0, const SolverConfig& cfg, const SnapshotSink& sink) {
    if (!(cfg.t_end >= u0.t)) throw config_error("evolve: t_end before initial time");
    const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(u0.grid, u0.h);

    Field u = u0.space == Space::Fourier ? u0 : to_fourier(u0);
    pin_zero_xi(u);
    u.h = cfg.h;

    EvolveResult res;
    auto emit = [&](const Field& uf) {
        Field up = to_physical(uf);
        DiagnosticsRecord d = diagnose(up);
        res.diagnostics.push_back(d);
        res.wrapped = res.wrapped || d.wrapped;
        if (sink) sink(up, d);
    };

    emit(u);
    const double span = cfg.t_end - u.t;
    if (span > 0.0) {
        const long nsteps = std::max(1L, std::lround(span / dt));
        const double dt_eff = span / nsteps;  // land exactly on t_end
        Stepper st(u.grid, cfg.h, dt_eff, cfg.dealias, cfg.blowup_threshold, cfg.nonlinear);
        for (long s = 1; s <= nsteps; ++s) {
            st.step(u);
            if ((cfg.snapshot_every > 0 && s % cfg.snapshot_every == 0) || s == nsteps) emit(u);
        }
    }
    res.u = to_physical(u);
    return res;
}

double mass(const Field& u) {
    const double n = l2_norm(u);
    return n * n;
}

double energy(const Field& u) {
    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    const Grid& g = u.grid;
    const double tol0 = 1e-12 * (1.0 + l2_norm(uf));
    for (int j = 0; j < g.ny; ++j)
        if (std::abs(uf.at(0, j)) > tol0)
            throw domain_error("energy: field must be mean-zero in x");

    const bool inf = u.h.is_infinite();
    const double hinv = inf ? 0.0 : 1.0 / u.h.value();
    double quad = 0.0;
    for (int i = 1; i < g.nx; ++i) {
        const double xi = g.xi[i];
        if (xi == 0.0) continue;
        // symbol of T_h^{-1} d_x (resp. H^{-1} d_x): -xi coth(h xi) (resp. -|xi|)
        const double tsym = inf ? -std::abs(xi) : -xi * coth(u.h.value() * xi);
        for (int j = 0; j < g.ny; ++j) {
            const double eta = g.eta[j];
            const double w = std::norm(uf.at(i, j));
            quad += (tsym + hinv + (eta * eta) / (xi * xi)) * w;
        }
    }

    Field up = u.space == Space::Physical ? u : to_physical(uf);
    double cubic = 0.0;
    for (const cplx& v : up.data) {
        const double r = v.real();
        cubic += r * r * r;
    }
    cubic *= up.grid.cell_area() / 3.0;
    return quad - cubic;
}

Field apply_scaling(const Field& u, double lambda) {
    if (!(lambda > 0.0)) throw domain_error("apply_scaling: lambda must be positive");
    Field r = u;
    r.grid = make_grid(u.grid.nx, u.grid.ny, u.grid.Lx / lambda, u.grid.Ly / std::pow(lambda, 1.5));
    r.t = u.t / (lambda * lambda);
    r.h = u.h.is_infinite() ? Depth::infinite() : Depth::finite(u.h.value() / lambda);
    const double factor = u.space == Space::Physical ? lambda : std::pow(lambda, -0.25);
    for (cplx& v : r.data) v *= factor;
    return r;
}

Field apply_galilean(const Field& u, double c) {
    const Grid& g = u.grid;
    if (c == 0.0) return u;
    const double sreal = c * g.Ly / g.Lx;
    const long s = std::lround(sreal);
    if (std::abs(sreal - s) > 1e-9 * std::max(1.0, std::abs(sreal)))
        throw domain_error("apply_galilean: c Ly / Lx must be an integer");

    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    Field r = uf;
    const double t = u.t;
    for (int i = 0; i < g.nx; ++i) {
        const long ki = Grid::wrap(i, g.nx);
        for (int j = 0; j < g.ny; ++j) {
            const long lj = Grid::wrap(j, g.ny);
            long lsrc = lj - s * ki;  // eta - c xi on the integer lattice
            const int jsrc = static_cast<int>(((lsrc % g.ny) + g.ny) % g.ny);  // storage index
            const double ph = c * c * t * g.xi[i] - 2.0 * c * t * g.eta[j];
            r.at(i, j) = cplx(std::cos(ph), std::sin(ph)) * uf.at(i, jsrc);
        }
    }
    return u.space == Space::Fourier ? r : to_physical(r);
}

}  // namespace ccwave
