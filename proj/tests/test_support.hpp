#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "ccwave/field.hpp"
#include "ccwave/fourier.hpp"

namespace ccwave::testing {

// Random real field with Hermitian-symmetric spectrum, x-mean-zero, Nyquist
// cleared. band_limit caps the integer mode radius (0 = 2/3 of Nyquist).
inline Field random_real_field(const Grid& g, std::uint64_t seed, int band_limit = 0,
                               const Depth& h = Depth::finite(1.0)) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field f(g, Space::Fourier, 0.0, h);
    const int bx = band_limit > 0 ? band_limit : g.nx / 3;
    const int by = band_limit > 0 ? band_limit : g.ny / 3;
    for (int i = 0; i < g.nx; ++i) {
        const int ki = Grid::wrap(i, g.nx);
        if (ki == 0 || std::abs(ki) > bx) continue;
        for (int j = 0; j < g.ny; ++j) {
            const int lj = Grid::wrap(j, g.ny);
            if (std::abs(lj) > by) continue;
            if (ki > 0 || (ki == 0 && lj > 0)) {
                const cplx a(gauss(rng), gauss(rng));
                const double decay = std::exp(-0.1 * (ki * ki + lj * lj));
                f.at(i, j) = a * decay;
                const int im = (g.nx - i) % g.nx;
                const int jm = (g.ny - j) % g.ny;
                f.at(im, jm) = std::conj(a) * decay;
            }
        }
    }
    return f;
}

inline double rel_err(double a, double b) {
    const double s = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / s;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

}  // namespace ccwave::testing
