#include "ccwave/grid.hpp"

#include <cmath>

#include "ccwave/errors.hpp"

namespace ccwave {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

Grid make_grid(int nx, int ny, double Lx, double Ly) {
    if (!is_pow2(nx) || !is_pow2(ny) || nx < 8 || ny < 8)
        throw config_error("make_grid: nx, ny must be powers of two >= 8");
    if (!(Lx > 0.0) || !(Ly > 0.0))
        throw config_error("make_grid: Lx, Ly must be positive");

    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.Lx = Lx;
    g.Ly = Ly;
    g.xi.resize(nx);
    g.eta.resize(ny);
    g.x.resize(nx);
    g.y.resize(ny);
    const double two_pi = 2.0 * M_PI;
    for (int i = 0; i < nx; ++i) {
        g.xi[i] = two_pi * Grid::wrap(i, nx) / Lx;
        g.x[i] = g.x0 - Lx / 2.0 + i * (Lx / nx);
    }
    for (int j = 0; j < ny; ++j) {
        g.eta[j] = two_pi * Grid::wrap(j, ny) / Ly;
        g.y[j] = g.y0 - Ly / 2.0 + j * (Ly / ny);
    }
    return g;
}

}  // namespace ccwave
