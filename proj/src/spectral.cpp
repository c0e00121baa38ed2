#include "ccwave/spectral.hpp"

#include <cmath>

#include "ccwave/errors.hpp"
#include "ccwave/fourier.hpp"

namespace ccwave {

SymbolTable SymbolTable::build(const Grid& g, const Depth& h) {
    SymbolTable t;
    t.grid = g;
    t.h = h;
    t.omega.assign(g.size(), 0.0);
    t.little_m.assign(g.nx, 0.0);
    t.dx_inv.assign(g.nx, cplx(0.0, 0.0));
    for (int i = 0; i < g.nx; ++i) {
        const double xi = g.xi[i];
        if (xi != 0.0) {
            t.little_m[i] = m_eval(h, xi);
            t.dx_inv[i] = cplx(0.0, -1.0 / xi);  // 1/(i xi)
            for (int j = 0; j < g.ny; ++j) t.omega[g.idx(i, j)] = ccwave::omega(h, xi, g.eta[j]);
        }
    }
    return t;
}

Field apply_multiplier(const Field& f, const std::vector<cplx>& symbol) {
    if (f.space != Space::Fourier) throw domain_error("apply_multiplier: Fourier space required");
    if (symbol.size() != f.data.size()) throw domain_error("apply_multiplier: symbol shape mismatch");
    Field r = f;
    for (std::size_t m = 0; m < r.data.size(); ++m) r.data[m] *= symbol[m];
    return r;
}

Field apply_multiplier(const Field& f, const std::function<cplx(double, double)>& symbol) {
    if (f.space != Space::Fourier) throw domain_error("apply_multiplier: Fourier space required");
    Field r = f;
    const Grid& g = f.grid;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) r.at(i, j) *= symbol(g.xi[i], g.eta[j]);
    return r;
}

bool dealias_mask(const Grid& g, int i, int j) {
    return 3 * std::abs(Grid::wrap(i, g.nx)) <= g.nx && 3 * std::abs(Grid::wrap(j, g.ny)) <= g.ny;
}

void dealias_inplace(Field& f) {
    if (f.space != Space::Fourier) throw domain_error("dealias: Fourier space required");
    const Grid& g = f.grid;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            if (!dealias_mask(g, i, j)) f.at(i, j) = cplx(0.0, 0.0);
}

Field dealias(const Field& f) {
    Field r = f;
    dealias_inplace(r);
    return r;
}

Field propagate_linear(const Field& f, double dt, const SymbolTable& table) {
    if (f.space != Space::Fourier) throw domain_error("propagate_linear: Fourier space required");
    if (!table.grid.same_shape(f.grid) || table.h != f.h)
        throw domain_error("propagate_linear: symbol table mismatch");
    Field r = f;
    const Grid& g = f.grid;
    for (int j = 0; j < g.ny; ++j) r.at(0, j) = cplx(0.0, 0.0);
    for (int i = 1; i < g.nx; ++i) {
        const std::size_t base = g.idx(i, 0);
        for (int j = 0; j < g.ny; ++j) {
            const double ph = dt * table.omega[base + j];
            r.data[base + j] *= cplx(std::cos(ph), std::sin(ph));
        }
    }
    r.t += dt;
    return r;
}

Field propagate_linear(const Field& f, double dt) {
    return propagate_linear(f, dt, SymbolTable::build(f.grid, f.h));
}

double weighted_sup_dx(const Field& f) {
    Field w = f.space == Space::Fourier ? f : to_fourier(f);
    const Grid& g = w.grid;
    for (int i = 0; i < g.nx; ++i) {
        const double s = std::pow(1.0 + g.xi[i] * g.xi[i], -0.25);
        for (int j = 0; j < g.ny; ++j) w.at(i, j) *= s;
    }
    return sup_norm(to_physical(w));
}

}  // namespace ccwave
