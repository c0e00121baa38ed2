#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ccwave/field.hpp"

namespace ccwave {

// Galilean trapezoid Q_{N,k} = { N/2 < |xi| < 2N, |eta/xi - k N^{1/2}| < (3/4) N^{1/2} }.
struct Trapezoid {
    int n = 0;       // N = 2^n
    std::int64_t k = 0;

    double N() const;
    bool contains(double xi, double eta) const;
};

// Block decomposition of a Fourier-space mass distribution over the
// canonical disjoint sub-cells N = 2^{floor(log2|xi|)}, k = round((eta/xi)/sqrt(N)).
// Each cell lies inside its trapezoid and the cells tile the plane, so block
// masses sum exactly to the total L2 mass.
struct BesovDecomposition {
    double p = 2.0, q = 2.0;
    std::map<std::pair<int, std::int64_t>, double> mass2;  // (n, k) -> squared L2 mass

    void add(double xi, double eta, double mass2_contrib);
    double norm() const;  // the l^q l^p L^2 norm with weight N^{1/4}
};

// Sparse Fourier-space data on an implicit uniform lattice with spacings
// (dxi, deta); values are continuum amplitudes and L2 masses are Riemann
// sums |a|^2 dxi deta. Used where dense grids are out of reach.
struct SparseSpectrum {
    double dxi = 0.0, deta = 0.0;
    struct Column {
        std::int64_t jx = 0;   // xi = jx * dxi
        std::int64_t jy0 = 0;  // eta of vals[r] = (jy0 + r) * deta
        std::vector<cplx> vals;
    };
    std::vector<Column> cols;

    double l2_mass2() const;
};

double besov_norm(const Field& f, double p, double q);
double besov_norm(const SparseSpectrum& f, double p, double q);

}  // namespace ccwave
