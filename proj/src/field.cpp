#include "ccwave/field.hpp"

#include <algorithm>
#include <cmath>

#include "ccwave/errors.hpp"

namespace ccwave {

double l2_norm(const Field& f) {
    double s = 0.0;
    for (const cplx& v : f.data) s += std::norm(v);
    if (f.space == Space::Physical) s *= f.grid.cell_area();
    return std::sqrt(s);
}

double sup_norm(const Field& f) {
    double m = 0.0;
    for (const cplx& v : f.data) m = std::max(m, std::abs(v));
    return m;
}

void pin_zero_xi(Field& f) {
    if (f.space != Space::Fourier) throw domain_error("pin_zero_xi: Fourier space required");
    for (int j = 0; j < f.grid.ny; ++j) f.at(0, j) = cplx(0.0, 0.0);
}

void zero_nyquist(Field& f) {
    if (f.space != Space::Fourier) throw domain_error("zero_nyquist: Fourier space required");
    const int inyq = f.grid.nx / 2;
    const int jnyq = f.grid.ny / 2;
    for (int j = 0; j < f.grid.ny; ++j) f.at(inyq, j) = cplx(0.0, 0.0);
    for (int i = 0; i < f.grid.nx; ++i) f.at(i, jnyq) = cplx(0.0, 0.0);
}

namespace {
void check_compat(const Field& a, const Field& b) {
    if (!a.grid.same_shape(b.grid) || a.space != b.space)
        throw domain_error("field arithmetic: incompatible grids or representations");
}
}

Field operator+(const Field& a, const Field& b) {
    check_compat(a, b);
    Field r = a;
    for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
    return r;
}

Field operator-(const Field& a, const Field& b) {
    check_compat(a, b);
    Field r = a;
    for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] -= b.data[i];
    return r;
}

Field& operator+=(Field& a, const Field& b) {
    check_compat(a, b);
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
    return a;
}

Field& operator-=(Field& a, const Field& b) {
    check_compat(a, b);
    for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] -= b.data[i];
    return a;
}

Field& operator*=(Field& a, double s) {
    for (cplx& v : a.data) v *= s;
    return a;
}

Field operator*(double s, Field a) {
    a *= s;
    return a;
}

}  // namespace ccwave
