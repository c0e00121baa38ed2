#pragma once

#include <functional>
#include <vector>

#include "ccwave/field.hpp"
#include "ccwave/symbols.hpp"

namespace ccwave {

// Precomputed per-mode symbol values for one (grid, depth) pair.
// omega has its xi = 0 rows set to 0; dx_inv is p.v. 1/(i xi) with 0 at xi = 0.
struct SymbolTable {
    Grid grid;
    Depth h = Depth::finite(1.0);
    std::vector<double> omega;    // nx*ny
    std::vector<double> little_m; // nx  (m(xi), depth-aware)
    std::vector<cplx> dx_inv;     // nx

    static SymbolTable build(const Grid& g, const Depth& h);
};

// Pointwise product uhat(k) *= symbol(k). Fourier space only.
Field apply_multiplier(const Field& f, const std::vector<cplx>& symbol);
Field apply_multiplier(const Field& f, const std::function<cplx(double, double)>& symbol);

// 2/3-rule dealiasing: zero integer modes with |j| > nx/3 or |l| > ny/3.
Field dealias(const Field& f);
void dealias_inplace(Field& f);
bool dealias_mask(const Grid& g, int i, int j);  // true if mode retained

// Exact linear propagation: each mode multiplied by exp(i dt omega_h(k)),
// xi = 0 modes stay zero. Advances the timestamp by dt.
Field propagate_linear(const Field& f, double dt);
Field propagate_linear(const Field& f, double dt, const SymbolTable& table);

// sup norm of <D_x>^{-1/2} u (the dispersive-estimate weight).
double weighted_sup_dx(const Field& f);

}  // namespace ccwave
