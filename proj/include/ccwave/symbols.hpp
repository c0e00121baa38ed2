#pragma once

#include <cstdint>
#include <utility>

#include "ccwave/depth.hpp"

namespace ccwave {

// Closed-form scalar symbols of the model. Finite-depth forms that the
// analysis normalizes to unit depth (m, Phi, phi, the normal-form symbols)
// are implemented at h = 1; other depths are reached by the grid-level
// scaling map in the solver module.

struct FreqVec {
    double xi = 0.0;
    double eta = 0.0;
};

struct FreqPair {
    FreqVec k1, k2;
};

// Stable hyperbolic helpers (series fallbacks near 0, overflow-safe tails).
double coth(double x);                 // x != 0
double sq_csch(double x);              // csch(x)^2, x != 0
double s2csch2(double s);              // s^2 csch(s)^2, even, limit 1 at 0
double xcothx(double x);               // x coth(x), even, limit 1 at 0
double xi2coth_reduced(double xi, double h);  // xi^2 coth(h xi) - xi/h, stable near 0

// Dispersion relation omega_h(k); odd in k, xi != 0 required.
double omega(const Depth& h, double xi, double eta);

// m(xi) = 2 xi coth xi - xi^2 csch^2 xi - 1 (finite depth, h=1 form).
// Even, m(0) = 0, m ~ xi^2 at 0 and m -> 2|xi| - 1 at infinity.
double m_eval(double xi);
double m_prime(double xi);
// Depth-aware variants: infinite depth has m(xi) = 2|xi|.
double m_eval(const Depth& h, double xi);
double m_prime(const Depth& h, double xi);

// Positive inverse of m on (0, inf): the unique xi > 0 with
// |m(xi) - v| <= tol * max(1, v). Bisection-bracketed Newton.
double m_inverse(double v, double tol = 1e-13);
double m_inverse(const Depth& h, double v, double tol = 1e-13);

// Self-similar profile of the eikonal phase: Phi(v) for v > 0, with
// phi(t,x,y) = t Phi(z/t), z = -(x + y^2/(4t)). Finite depth uses the
// unit-depth closed form; infinite depth is -v^2/4. Note d/dv Phi = -m^{-1}(v)
// and the spatial derivative phi_x = +m^{-1}(z/t).
double phase_Phi(const Depth& h, double v);
double phase_phi(const Depth& h, double t, double z);
// Residual of Phi - v Phi' + (Phi')^2 coth(Phi') - Phi' with Phi' = -m^{-1}(v).
double eikonal_residual(double v);

// Resonance function Omega(k1, k2) = omega(k1) + omega(k2) + omega(-k1-k2)
// evaluated by the cancellation-free closed form. Requires xi1, xi2,
// xi1 + xi2 all nonzero.
double resonance(const Depth& h, const FreqPair& p);

struct LowerBoundReport {
    double min_ratio_lowhigh = 0.0;
    double min_ratio_highhigh = 0.0;
    double min_ratio = 0.0;
    std::int64_t samples = 0;
    bool all_positive = false;
    bool pass = false;   // min_ratio >= floor
    double floor = 0.0;  // threshold the report was checked against
};

// Samples the low-high (|xi1| <= |xi2|/8) and high-high (|xi1+xi2| <= |xi2|/8)
// regimes and reports the minimum of |Omega| / bound-expression.
LowerBoundReport resonance_lower_bound_check(const Depth& h, std::int64_t samples,
                                             std::uint64_t seed = 1234, double floor = 0.0);

enum class NfKind { K, KSym, BEnergy };

// Normal-form symbols from the energy estimate: the commutator symbol k,
// its symmetrization, and b = k_sym / Omega at eta-degenerate arguments
// (eta1/xi1 = eta2/xi2, the minimal-|Omega| direction). Identically zero
// at infinite depth.
double nf_symbols(const Depth& h, double xi1, double xi2, NfKind which);

// Scattering normal-form symbol (xi1 + xi2) / (2 Omega(k1,k2)).
double b_scatter(const Depth& h, const FreqPair& p);

}  // namespace ccwave
