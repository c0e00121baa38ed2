#include "ccwave/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccwave/errors.hpp"

namespace ccwave {

double Trapezoid::N() const { return std::exp2(n); }

bool Trapezoid::contains(double xi, double eta) const {
    const double NN = N();
    const double axi = std::abs(xi);
    if (!(axi > 0.5 * NN && axi < 2.0 * NN)) return false;
    const double r = eta / xi;
    return std::abs(r - k * std::sqrt(NN)) < 0.75 * std::sqrt(NN);
}

void BesovDecomposition::add(double xi, double eta, double mass2_contrib) {
    if (xi == 0.0 || mass2_contrib == 0.0) return;
    const int n = static_cast<int>(std::floor(std::log2(std::abs(xi))));
    const double rootN = std::exp2(0.5 * n);
    const std::int64_t k = std::llround(eta / xi / rootN);
    mass2[{n, k}] += mass2_contrib;
}

double BesovDecomposition::norm() const {
    if (!(p >= 1.0) || !(q >= 1.0)) throw domain_error("besov_norm: p, q must be >= 1");
    const bool pinf = std::isinf(p);
    const bool qinf = std::isinf(q);

    double total = 0.0, totmax = 0.0;
    auto it = mass2.begin();
    while (it != mass2.end()) {
        const int n = it->first.first;
        double sp = 0.0, spmax = 0.0;
        for (; it != mass2.end() && it->first.first == n; ++it) {
            const double m = std::sqrt(it->second);
            if (pinf) spmax = std::max(spmax, m);
            else sp += std::pow(m, p);
        }
        const double inner = pinf ? spmax : std::pow(sp, 1.0 / p);
        const double weighted = std::exp2(0.25 * n) * inner;
        if (qinf) totmax = std::max(totmax, weighted);
        else total += std::pow(weighted, q);
    }
    return qinf ? totmax : std::pow(total, 1.0 / q);
}

double SparseSpectrum::l2_mass2() const {
    double s = 0.0;
    for (const Column& c : cols)
        for (const cplx& v : c.vals) s += std::norm(v);
    return s * dxi * deta;
}

double besov_norm(const Field& f, double p, double q) {
    if (f.space != Space::Fourier) throw domain_error("besov_norm: Fourier space required");
    BesovDecomposition d;
    d.p = p;
    d.q = q;
    const Grid& g = f.grid;
    for (int i = 0; i < g.nx; ++i) {
        if (g.xi[i] == 0.0) continue;
        for (int j = 0; j < g.ny; ++j) {
            const double m2 = std::norm(f.at(i, j));
            if (m2 > 0.0) d.add(g.xi[i], g.eta[j], m2);
        }
    }
    return d.norm();
}

double besov_norm(const SparseSpectrum& f, double p, double q) {
    BesovDecomposition d;
    d.p = p;
    d.q = q;
    const double w = f.dxi * f.deta;
    for (const SparseSpectrum::Column& c : f.cols) {
        const double xi = c.jx * f.dxi;
        for (std::size_t r = 0; r < c.vals.size(); ++r) {
            const double m2 = std::norm(c.vals[r]);
            if (m2 > 0.0) d.add(xi, (c.jy0 + static_cast<std::int64_t>(r)) * f.deta, m2 * w);
        }
    }
    return d.norm();
}

}  // namespace ccwave
