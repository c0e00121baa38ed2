#include "ccwave/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ccwave/errors.hpp"

namespace ccwave {

namespace {
constexpr double kSeriesCut = 0.1;  // below this, series forms are more accurate
}

double coth(double x) {
    if (x == 0.0) throw domain_error("coth: x = 0");
    const double ax = std::abs(x);
    if (ax < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 / x + x * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 - x2 / 4725.0)));
    }
    if (ax > 20.0) {
        // coth x = sgn(x) (1 + 2 e^{-2|x|} / (1 - e^{-2|x|}))
        const double e = std::exp(-2.0 * ax);
        return std::copysign(1.0 + 2.0 * e / (1.0 - e), x);
    }
    return 1.0 / std::tanh(x);
}

double sq_csch(double x) {
    if (x == 0.0) throw domain_error("sq_csch: x = 0");
    const double ax = std::abs(x);
    if (ax < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 / x2 - 1.0 / 3.0 + x2 * (1.0 / 15.0 + x2 * (-2.0 / 189.0 + x2 / 675.0));
    }
    if (ax > 350.0) return 0.0;  // underflows anyway
    const double e = std::exp(-ax);
    const double s = 2.0 * e / (1.0 - e * e);  // csch|x|
    return s * s;
}

double s2csch2(double s) {
    if (s == 0.0) return 1.0;
    const double as = std::abs(s);
    if (as < kSeriesCut) {
        const double s2 = s * s;
        return 1.0 + s2 * (-1.0 / 3.0 + s2 * (1.0 / 15.0 + s2 * (-2.0 / 189.0 + s2 / 675.0)));
    }
    return s * s * sq_csch(s);
}

double xcothx(double x) {
    if (x == 0.0) return 1.0;
    const double ax = std::abs(x);
    if (ax < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 + x2 * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 - x2 / 4725.0)));
    }
    return x * coth(x);
}

double xi2coth_reduced(double xi, double h) {
    // xi^2 coth(h xi) - xi/h  =  (xi/h) (h xi coth(h xi) - 1); cancellation-free.
    if (xi == 0.0) return 0.0;
    const double u = h * xi;
    if (std::abs(u) < kSeriesCut) {
        const double u2 = u * u;
        return (xi / h) * u2 * (1.0 / 3.0 + u2 * (-1.0 / 45.0 + u2 * (2.0 / 945.0 - u2 / 4725.0)));
    }
    return (xi / h) * (xcothx(u) - 1.0);
}

double omega(const Depth& h, double xi, double eta) {
    if (xi == 0.0) throw domain_error("omega: xi = 0");
    if (h.is_infinite()) return xi * std::abs(xi) - eta * eta / xi;
    return xi2coth_reduced(xi, h.value()) - eta * eta / xi;
}

double m_eval(double xi) {
    const double ax = std::abs(xi);
    if (ax < kSeriesCut) {
        const double x2 = xi * xi;
        return x2 * (1.0 + x2 * (-1.0 / 9.0 + x2 * (2.0 / 135.0 + x2 * (-1.0 / 525.0 + x2 * 2.0 / 8505.0))));
    }
    return 2.0 * xcothx(xi) - s2csch2(xi) - 1.0;
}

double m_prime(double xi) {
    const double ax = std::abs(xi);
    if (ax < kSeriesCut) {
        const double x2 = xi * xi;
        return xi * (2.0 + x2 * (-4.0 / 9.0 + x2 * (4.0 / 45.0 + x2 * (-8.0 / 525.0 + x2 * 4.0 / 1701.0))));
    }
    const double c = coth(xi);
    const double s2 = sq_csch(xi);
    return 2.0 * c - 4.0 * xi * s2 + 2.0 * xi * xi * s2 * c;
}

double m_eval(const Depth& h, double xi) {
    return h.is_infinite() ? 2.0 * std::abs(xi) : m_eval(xi);
}

double m_prime(const Depth& h, double xi) {
    return h.is_infinite() ? std::copysign(2.0, xi) : m_prime(xi);
}

double m_inverse(double v, double tol) {
    if (!(v > 0.0)) throw domain_error("m_inverse: v must be positive");
    if (!(tol > 0.0)) throw domain_error("m_inverse: tol must be positive");
    // converge relative to v (stronger than tol*max(1,v) for small v)
    const double target = tol * v;

    // Seeds from the two asymptotic regimes, bracket by monotonicity.
    double x = v < 1.0 ? std::sqrt(v) : 0.5 * (v + 1.0);
    double lo = 0.5 * std::min(std::sqrt(v), 0.5 * (v + 1.0));
    double hi = 2.0 * std::max(std::sqrt(v), 0.5 * (v + 1.0)) + 1.0;
    while (m_eval(lo) > v) lo *= 0.5;
    while (m_eval(hi) < v) hi *= 2.0;

    for (int it = 0; it < 200; ++it) {
        const double f = m_eval(x) - v;
        if (std::abs(f) <= target) return x;
        if (f > 0.0) hi = std::min(hi, x);
        else lo = std::max(lo, x);
        const double d = m_prime(x);
        double xn = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
        if (xn == x) break;
        x = xn;
    }
    if (std::abs(m_eval(x) - v) > target)
        throw accuracy_error("m_inverse: did not converge", std::abs(m_eval(x) - v));
    return x;
}

double m_inverse(const Depth& h, double v, double tol) {
    if (h.is_infinite()) {
        if (!(v > 0.0)) throw domain_error("m_inverse: v must be positive");
        return 0.5 * v;
    }
    return m_inverse(v, tol);
}

double phase_Phi(const Depth& h, double v) {
    if (!(v > 0.0)) throw domain_error("phase_Phi: v must be positive");
    if (h.is_infinite()) return -0.25 * v * v;
    const double xi = m_inverse(v);
    return xi * xi * coth(xi) - (1.0 + v) * xi;
}

double phase_phi(const Depth& h, double t, double z) {
    if (!(t > 0.0)) throw domain_error("phase_phi: t must be positive");
    if (h.is_infinite()) return -z * z / (4.0 * t);
    if (!(z > 0.0)) throw domain_error("phase_phi: z must be positive at finite depth");
    return t * phase_Phi(h, z / t);
}

double eikonal_residual(double v) {
    const double xi = m_inverse(v);
    const double Phi = xi * xi * coth(xi) - (1.0 + v) * xi;
    const double dPhi = -xi;  // Phi'(v) = -m^{-1}(v)
    return Phi - v * dPhi + dPhi * dPhi * coth(dPhi) - dPhi;
}

double resonance(const Depth& h, const FreqPair& p) {
    const double x1 = p.k1.xi, x2 = p.k2.xi;
    const double x3 = -(x1 + x2);
    if (x1 == 0.0 || x2 == 0.0 || x3 == 0.0)
        throw domain_error("resonance: xi1, xi2, xi1+xi2 must be nonzero");
    const double r = p.k1.eta / x1 - p.k2.eta / x2;
    if (h.is_infinite()) {
        const double mx = std::max({std::abs(x1), std::abs(x2), std::abs(x3)});
        return x1 * x2 * x3 * (2.0 / mx + r * r / (x3 * x3));
    }
    const double hh = h.value();
    const double xpart = -(xi2coth_reduced(x1 + x2, hh) - xi2coth_reduced(x1, hh) - xi2coth_reduced(x2, hh));
    return xpart - x1 * x2 * r * r / (x1 + x2);
}

namespace {

// Right-hand sides of the finite-depth resonance lower bounds.
double lb_lowhigh(const FreqPair& p) {
    const double x1 = p.k1.xi, x2 = p.k2.xi;
    const double bracket = (p.k1.eta + p.k2.eta) / (x1 + x2) - p.k2.eta / x2;
    const double b2 = std::hypot(1.0, x2);  // <xi2>
    return std::abs(x1) * x2 * x2 / b2 * (1.0 + b2 / (x1 * x1) * bracket * bracket);
}

double lb_highhigh(const FreqPair& p) {
    const double x1 = p.k1.xi, x2 = p.k2.xi;
    const double bracket = p.k1.eta / x1 - p.k2.eta / x2;
    const double b2 = std::hypot(1.0, x2);
    const double s = x1 + x2;
    return std::abs(s) * x2 * x2 / b2 * (1.0 + b2 / (s * s) * bracket * bracket);
}

}  // namespace

LowerBoundReport resonance_lower_bound_check(const Depth& h, std::int64_t samples,
                                             std::uint64_t seed, double floor) {
    if (h.is_infinite()) throw domain_error("resonance_lower_bound_check: finite depth only");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logxi(std::log(1e-2), std::log(1e2));
    std::uniform_real_distribution<double> ratio(-10.0, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    LowerBoundReport rep;
    rep.samples = samples;
    rep.floor = floor;
    double mn_lh = std::numeric_limits<double>::infinity();
    double mn_hh = std::numeric_limits<double>::infinity();
    bool positive = true;

    for (std::int64_t s = 0; s < samples; ++s) {
        const double ax2 = std::exp(logxi(rng));
        const double sign2 = unit(rng) < 0.5 ? -1.0 : 1.0;
        const double x2 = sign2 * ax2;
        const double r1 = ratio(rng), r2 = ratio(rng);

        // low-high: |xi1| <= |xi2| / 8
        {
            const double ax1 = ax2 / 8.0 * unit(rng);
            if (ax1 > 0.0) {
                const double x1 = (unit(rng) < 0.5 ? -1.0 : 1.0) * ax1;
                if (x1 + x2 != 0.0) {
                    FreqPair p{{x1, r1 * x1}, {x2, r2 * x2}};
                    const double om = std::abs(resonance(h, p));
                    if (om <= 0.0) positive = false;
                    mn_lh = std::min(mn_lh, om / lb_lowhigh(p));
                }
            }
        }
        // high-high: |xi1 + xi2| <= |xi2| / 8
        {
            const double sum = (unit(rng) - 0.5) * ax2 / 4.0;  // |sum| <= |xi2|/8
            const double x1 = sum - x2;
            if (x1 != 0.0 && sum != 0.0) {
                FreqPair p{{x1, r1 * x1}, {x2, r2 * x2}};
                const double om = std::abs(resonance(h, p));
                if (om <= 0.0) positive = false;
                mn_hh = std::min(mn_hh, om / lb_highhigh(p));
            }
        }
    }
    rep.min_ratio_lowhigh = mn_lh;
    rep.min_ratio_highhigh = mn_hh;
    rep.min_ratio = std::min(mn_lh, mn_hh);
    rep.all_positive = positive && rep.min_ratio > 0.0;
    rep.pass = rep.all_positive && rep.min_ratio >= floor;
    return rep;
}

double nf_symbols(const Depth& h, double xi1, double xi2, NfKind which) {
    const double s = xi1 + xi2;
    if (xi1 == 0.0 || xi2 == 0.0 || s == 0.0)
        throw domain_error("nf_symbols: xi1, xi2, xi1+xi2 must be nonzero");
    if (h.is_infinite()) return 0.0;  // 1 + H^{-2} = 0: commutator symbol vanishes

    switch (which) {
        case NfKind::K:
            return s * xi2 * (s * s * sq_csch(s) - xi2 * xi2 * sq_csch(xi2));
        case NfKind::KSym:
            return 0.5 * s * s * s2csch2(s)
                 - 0.5 * s * xi1 * xi1 * xi1 * sq_csch(xi1)
                 - 0.5 * s * xi2 * xi2 * xi2 * sq_csch(xi2);
        case NfKind::BEnergy: {
            const double ksym = nf_symbols(h, xi1, xi2, NfKind::KSym);
            // eta-degenerate resonance: the transverse term vanishes.
            const double om = -(xi2coth_reduced(s, 1.0) - xi2coth_reduced(xi1, 1.0)
                                - xi2coth_reduced(xi2, 1.0));
            if (std::abs(om) < 1e-300) throw domain_error("nf_symbols: resonance underflow");
            return ksym / om;
        }
    }
    return 0.0;
}

double b_scatter(const Depth& h, const FreqPair& p) {
    const double om = resonance(h, p);
    if (std::abs(om) < 1e-300) throw domain_error("b_scatter: resonance underflow");
    return (p.k1.xi + p.k2.xi) / (2.0 * om);
}

}  // namespace ccwave
