#pragma once

#include <vector>

#include "ccwave/field.hpp"
#include "ccwave/spectral.hpp"

namespace ccwave {

// Littlewood-Paley ladder at resolution 2^{delta Z}. Band n covers
// 2^{delta(n-1)} < |xi| < 2^{delta(n+1)} with smooth masks that telescope
// to an exact partition of unity on xi != 0.
struct LPLadder {
    double delta = 1.0;
    int n_min = 0, n_max = 0;

    static LPLadder for_grid(const Grid& g, double delta = 1.0);
    double band(int n) const;         // N = 2^{delta n}
    double mask(int n, double xi) const;
    std::vector<int> bands() const;
};

// Smooth band projection P_N u and +/- wavenumber projections.
Field lp_project(const Field& u, const LPLadder& ladder, int n);
Field pm_project(const Field& u, int sign);  // sign = +1 or -1

// Shear to/from the self-similar frame: to_z maps u(x,y) -> u(x - y^2/(4t), y)
// via the per-row spectral phase exp(-i xi y^2/(4t)); from_z is the inverse.
enum class ZDirection { to_z, from_z };
Field z_transform(const Field& u, double t, ZDirection dir);

struct BandPiece {
    int n = 0;
    double N = 0.0;
    Field plus, minus;  // complex physical-space pieces chi_N^hyp(z/t) u_N^{+/-}
};

struct SplitField {
    std::vector<BandPiece> hyp;
    Field ell;        // real physical-space remainder (includes bands N < threshold)
    double t = 0.0;
    double threshold = 0.0;  // t^{-1/3} (finite depth) or t^{-1/2} (infinite)

    Field hyp_sum() const;   // sum of all hyperbolic pieces (physical, complex)
};

// Window chi_N^hyp(v): identically 1 on [m(N)/2, 2 m(N)], smooth falloff over
// one additional dyadic factor, zero for v <= m(N)/4 and v >= 4 m(N).
double hyp_window(const Depth& h, double N, double v);

SplitField hyperbolic_elliptic_split(const Field& u, double t, const LPLadder& ladder);

enum class VectorField { Ly, Lxh, J, Lz, LzPlus, LzMinus };

// The commuting vector fields and the z-adapted operators, applied to a
// Fourier-space field; result in Fourier space. Physical weights (x, y, z)
// act on the centered fundamental domain.
Field apply_vector_field(const Field& u, double t, VectorField which);

struct XNormReport {
    double total = 0.0;
    double l2 = 0.0, dx4 = 0.0, ly2dx = 0.0, j = 0.0;
};

// The time-dependent norm ||u||_X (h = 1 and h = infinity forms). At t = 0
// the operators reduce to the initial-data weights automatically.
XNormReport x_norm(const Field& u);
double z_norm(const Field& u, int k);

struct BoundRatios {
    double u_hyp = 0.0, ux_hyp = 0.0;
    double u_ell = 0.0, ux_ell = 0.0;
    double elliptic_gain = 0.0;
    double x_norm_value = 0.0;
};

// Max over the grid of the pointwise-bound ratios of Lemma-FDR2 shape
// (profiles depend on depth), plus the elliptic L2 gain ratio.
BoundRatios pointwise_bound_report(const Field& u, double t, const SplitField& split);

struct SobolevRatios {
    double sup_ratio = 0.0;     // ||f||_inf / (||f||^{1/4} ||f_x||^{1/2} ||f_yy||^{1/4})
    double holder_ratio = 0.0;  // alpha = 1/4 Holder analogue
};

SobolevRatios sobolev_check(const Field& f);

// The region Sigma_t = { t^{-1/12} < v < t^{1/12} }.
struct SigmaBounds {
    double lo = 0.0, hi = 0.0;
};
SigmaBounds sigma_region(double t);

}  // namespace ccwave
