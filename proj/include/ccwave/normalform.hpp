#pragma once

#include <functional>
#include <vector>

#include "ccwave/decomposition.hpp"
#include "ccwave/field.hpp"

namespace ccwave {

enum class BilinearKind { EnergyNF, ScatterNF, Custom };

struct BilinearSymbol {
    BilinearKind kind = BilinearKind::Custom;
    Depth h = Depth::finite(1.0);
    bool positive_only = false;  // restrict both inputs to positive wavenumbers
    std::function<double(const FreqPair&)> custom;  // used by Custom

    double eval(const FreqPair& p) const;
};

// Direct double sum over retained Fourier modes:
//   B[f,g]^(k) = (Lx Ly)^{-1/2} sum_{k1+k2=k} b(k1,k2) fhat(k1) ghat(k2),
// so b == 1 reproduces the pointwise product. Output modes falling outside
// the lattice are dropped. Deterministic lexicographic summation order.
// Throws resource_error when either field retains more than 2^16 modes.
Field bilinear_apply(const BilinearSymbol& sym, const Field& f, const Field& g);

struct ScatterCorrection {
    Field corrected;        // u - 2 Re B[w+, w+] (physical)
    double correction_l2 = 0.0;
    double band_lo = 0.0, band_hi = 0.0;  // realized LP band edges
};

// Normal-form correction of the leading band w = P_{t^-1/6 < . <= t^1/12} u
// with the scattering symbol (xi1+xi2) / (2 Omega).
ScatterCorrection scatter_correction(const Field& u, double t, const LPLadder& ladder);

struct ScatterSeries {
    std::vector<double> t;
    std::vector<double> cauchy_diff;     // d_j = || p_{j+1} - p_j ||_2 (size n-1)
    std::vector<double> correction_l2;   // per snapshot
    std::vector<double> pullback_mass;   // || p_j ||_2^2
    Field W;                             // last pullback (physical)
    double mass_ratio = 0.0;             // ||W||_2 / ||u(t_0)||_2
    bool diffs_decreasing = false;
};

// Pullbacks S(-t_j)(u(t_j) - 2 Re B[w+,w+]) of a snapshot sequence with
// t_{j+1} >= sqrt(2) t_j; reports the Cauchy-difference series and the
// profile W. Non-monotone differences are reported, not thrown.
ScatterSeries scattering_profile(const std::vector<Field>& snapshots);

}  // namespace ccwave
