#pragma once

#include <complex>
#include <vector>

#include "ccwave/depth.hpp"
#include "ccwave/grid.hpp"

namespace ccwave {

using cplx = std::complex<double>;

enum class Space { Physical, Fourier };

// A scalar state u(t, x, y). Fourier-space data uses the isometric
// normalization: uhat(k) = sqrt(Lx*Ly)/(nx*ny) * sum_j u_j exp(-i k.x_j),
// with x_j the centered coordinates, so that sum_k |uhat|^2 equals the
// Riemann sum of u^2 over the domain (discrete Parseval).
struct Field {
    Grid grid;
    Space space = Space::Physical;
    double t = 0.0;
    Depth h = Depth::finite(1.0);
    std::vector<cplx> data;

    Field() = default;
    Field(const Grid& g, Space s, double time, Depth depth)
        : grid(g), space(s), t(time), h(depth), data(g.size(), cplx(0.0, 0.0)) {}

    cplx& at(int i, int j) { return data[grid.idx(i, j)]; }
    const cplx& at(int i, int j) const { return data[grid.idx(i, j)]; }
};

// l2 norm: sqrt of the Riemann sum of |u|^2 (physical) or sum |uhat|^2 (Fourier).
double l2_norm(const Field& f);
double sup_norm(const Field& f);  // max_j |data_j| (physical space natural)

// Zero all modes with xi = 0 (the x-mean-zero constraint). Fourier space only.
void pin_zero_xi(Field& f);
// Zero the Nyquist row/column (unpaired modes; kept empty so propagation
// preserves Hermitian symmetry exactly).
void zero_nyquist(Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field& operator+=(Field& a, const Field& b);
Field& operator-=(Field& a, const Field& b);
Field& operator*=(Field& a, double s);
Field operator*(double s, Field a);

}  // namespace ccwave
