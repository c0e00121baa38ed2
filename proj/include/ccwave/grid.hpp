#pragma once

#include <cstddef>
#include <vector>

namespace ccwave {

// Periodic rectangular computational domain with centered coordinates:
// x in [-Lx/2, Lx/2), y in [-Ly/2, Ly/2), and integer-lattice frequencies
// xi_j = 2*pi*j/Lx for j in {-nx/2, ..., nx/2-1} (FFT wrap order in storage).
struct Grid {
    int nx = 0, ny = 0;
    double Lx = 0.0, Ly = 0.0;
    double x0 = 0.0, y0 = 0.0;       // domain-center offsets (coordinates are x0 + [-Lx/2, Lx/2))
    std::vector<double> xi, eta;     // per-index frequency tables (wrap order)
    std::vector<double> x, y;        // physical coordinates

    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }
    double cell_area() const { return dx() * dy(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }

    // integer frequency of storage index i (i in [0,n)):  i < n/2 ? i : i - n
    static int wrap(int i, int n) { return i < n / 2 ? i : i - n; }

    bool same_shape(const Grid& o) const {
        return nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly;
    }
};

Grid make_grid(int nx, int ny, double Lx, double Ly);

}  // namespace ccwave
