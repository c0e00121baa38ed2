#pragma once

#include <cstdint>
#include <vector>

#include "ccwave/besov.hpp"

namespace ccwave {

struct CounterexampleParams {
    double N = 0.0;      // high frequency (dyadic >> 1)
    double eps = 0.1;    // delta = N^{-(1+eps)}
    double p = 2.0;      // Besov integrability exponent
    double dxi = 0.0;    // lattice spacings; <= 0 selects delta/8 and delta sqrt(N)/8
    double deta = 0.0;

    double delta() const;
};

struct Counterexample {
    SparseSpectrum phi;       // phi_high + phi_low (indicator amplitudes)
    SparseSpectrum phi_high, phi_low;
    double measure_high = 0.0, measure_low = 0.0;  // lattice measures of the sets
    double norm_high = 0.0, norm_low = 0.0, norm_total = 0.0;  // l^q l^p L^2 (q = 2)
};

// The Appendix-A data: indicator-valued amplitudes delta^{-1/2} N^{-1} on
// E_high and delta^{1/(2p)-3/2} N^{-1/(2p)} on E_low, sampled on the sparse
// lattice. Throws config_error when the lattice cannot resolve delta.
Counterexample build_counterexample(const CounterexampleParams& prm);

// Second Picard iterate at infinite depth, evaluated mode-wise exactly in
// time and restricted to the E_high +/- E_low output bands:
//   out(k) = e^{i t w(k)} (i xi/2) (2 pi)^{-1} sum_{k1+k2=k} D(t, Omega) phi(k1) phi(k2) dxi deta,
// with D = (e^{i t Omega} - 1)/(i Omega) (limit t at exact resonance).
SparseSpectrum second_iterate(const Counterexample& ce, const CounterexampleParams& prm, double t,
                              int threads = 1);

struct GrowthFit {
    std::vector<double> N, input_norm, output_norm;
    double slope = 0.0;             // fitted log output_norm vs log N
    double input_slope = 0.0;
    double predicted_slope = 0.0;   // (1 - 1/p) - eps (1/2 + 1/(2p))
};

GrowthFit growth_exponent_fit(double p, double q, const std::vector<double>& N_list, double eps,
                              int threads = 1);

struct OscillationStats {
    double max_abs_omega = 0.0;   // over sampled high-low pairs
    double bound_scale = 0.0;     // N * delta
    double constant = 0.0;        // max|Omega| / (N delta)
    double min_duhamel = 0.0;     // min |(e^{i t Omega}-1)/(i t Omega)| at t = 1
};

// Samples high-low pairs of a counterexample and reports the resonance size
// against the N*delta scale and the Duhamel-factor lower bound at t = 1.
OscillationStats oscillation_stats(const Counterexample& ce, const CounterexampleParams& prm,
                                   std::int64_t samples, std::uint64_t seed = 99);

}  // namespace ccwave
