#include "ccwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ccwave/errors.hpp"
#include "ccwave/symbols.hpp"

namespace ccwave {

namespace {

using zd = std::complex<double>;

struct Integrand {
    double t, x, cutoff;

    zd operator()(double xi) const {
        const double axi = std::abs(xi);
        if (axi == 0.0 || axi >= 2.0 * cutoff) return zd(0.0, 0.0);
        double w = 1.0;
        if (axi > cutoff) {
            const double s = (axi - cutoff) / cutoff;  // in (0,1)
            const double c = std::cos(0.5 * M_PI * s);
            w = c * c;
        }
        const double theta = t * xi2coth_reduced(xi, 1.0) + x * xi;
        return std::sqrt(axi) * w * zd(std::cos(theta), std::sin(theta));
    }
};

zd simpson(const zd& fa, const zd& fm, const zd& fb, double h) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

void adapt(const Integrand& f, double a, double b, zd fa, zd fm, zd fb, zd whole, double tol,
           int depth, zd& acc) {
    const double m = 0.5 * (a + b);
    const zd fl = f(0.5 * (a + m));
    const zd fr = f(0.5 * (m + b));
    const zd left = simpson(fa, fl, fm, m - a);
    const zd right = simpson(fm, fr, fb, b - m);
    const zd err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
        acc += left + right + err / 15.0;
        return;
    }
    adapt(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1, acc);
    adapt(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1, acc);
}

zd integrate_halfline(const Integrand& f, double a, double b, double tol) {
    // Seed panels fine enough to see the oscillation before adapting.
    // Max phase slope over the interval: |theta'| <= t m(|xi|_max) + |x|.
    const double slope = f.t * m_eval(std::max(std::abs(a), std::abs(b))) + std::abs(f.x);
    int panels = static_cast<int>(std::ceil(std::abs(b - a) * (slope + 1.0) / 4.0));
    panels = std::clamp(panels, 16, 1 << 20);
    zd acc(0.0, 0.0);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + p * h;
        const double pb = pa + h;
        const double pm = 0.5 * (pa + pb);
        const zd fa = f(pa), fm = f(pm), fb = f(pb);
        adapt(f, pa, pb, fa, fm, fb, simpson(fa, fm, fb, h), tol / panels, 24, acc);
    }
    return acc;
}

zd eval_at_cutoff(double t, double x, double cutoff, double tol) {
    Integrand f{t, x, cutoff};
    const zd pos = integrate_halfline(f, 0.0, 2.0 * cutoff, 0.5 * tol);
    const zd neg = integrate_halfline(f, -2.0 * cutoff, 0.0, 0.5 * tol);
    return (pos + neg) / std::sqrt(2.0 * M_PI);
}

}  // namespace

std::complex<double> kernel_oscillatory(double t, double x, double cutoff, double tol) {
    if (!(t > 0.0)) throw domain_error("kernel_oscillatory: t must be positive");
    if (!(cutoff > 0.0) || !(tol > 0.0)) throw domain_error("kernel_oscillatory: cutoff, tol must be positive");

    double c = cutoff;
    zd prev = eval_at_cutoff(t, x, c, 0.25 * tol);
    for (int round = 0; round < 6; ++round) {
        c *= 2.0;
        const zd cur = eval_at_cutoff(t, x, c, 0.25 * tol);
        if (std::abs(cur - prev) <= 0.5 * tol) return cur;
        prev = cur;
    }
    throw accuracy_error("kernel_oscillatory: cutoff doubling did not stabilize", std::abs(prev));
}

}  // namespace ccwave
