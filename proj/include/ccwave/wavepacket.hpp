#pragma once

#include <complex>
#include <vector>

#include "ccwave/decomposition.hpp"
#include "ccwave/field.hpp"

namespace ccwave {

// Compactly supported C-infinity profile b_p(s) proportional to
// exp(-1/(1-s^2)^p) on |s| < 1, normalized so that int b_p = 1.
// Larger p trades a flatter core for faster Fourier tails.
struct Bump {
    int p = 2;
    double value(double s) const;
    double derivative(double s) const;
    double integral_raw() const;  // int exp(-1/(1-s^2)^p) ds (normalization)
};

// Configuration of the testing wave packet Psi_v along the ray
// (x, y) = t (v_x, v_y) with v = -(v_x + v_y^2/4).
struct PacketSpec {
    double t = 1.0;
    double v = 1.0;
    double v_y = 0.0;
    Depth h = Depth::finite(1.0);
    int bump_p = 2;

    double lambda_z() const;
    double lambda_y() const;
    double vx() const { return -v - 0.25 * v_y * v_y; }
    bool in_sigma(double slack = 1.0) const;  // v inside (t^-1/12, t^1/12) / slack
};

// Sampled ingredients of the packet on a grid (all physical space):
// chi = envelope, phase = e^{i phi} (0 where z <= 0 at finite depth),
// phi_x = m^{-1}(z/t), chi_z = d/dz-slot derivative of the envelope.
struct PacketFrame {
    Field chi, phase, phi_x, chi_z;
    Field zmtv, ymtvy;  // z - tv and y - t v_y coordinate fields
};

PacketFrame packet_frame(const PacketSpec& spec, const Grid& grid);

// The wave packet Psi_v = d_x ( (i phi_x)^{-1} e^{i phi} chi(...) ), sampled
// on the grid with the x-derivative applied spectrally. Complex field.
Field build_packet(const PacketSpec& spec, const Grid& grid);

double l1_norm(const Field& f);

// gamma(t, v) = < u_x , Psi_v >. The packet is sampled on a refined grid and
// restricted spectrally to suppress sampling aliases; the inner product is a
// physical-space Riemann sum with spectral differentiation of u.
cplx gamma_test(const Field& u, const PacketSpec& spec, int refine = 2);

// u_x(t, t v) ~ 2 t^{-1} <v>^{1/2} Re( e^{i phi(t, tv)} gamma ).
double reconstruct_ux(cplx gamma, const PacketSpec& spec);

// Spectrally exact sample of u_x at the ray point (t vx, t vy).
double sample_ux(const Field& u, const PacketSpec& spec);

struct GammaSample {
    double t = 0.0, v = 0.0, v_y = 0.0;
    cplx gamma;
    double reconstructed = 0.0, sampled = 0.0;
};

struct GammaSeries {
    std::vector<GammaSample> samples;  // strictly increasing t
};

struct OdeResidual {
    double residual = 0.0;  // |gamma(t+dt) - gamma(t)| / dt
    double bound = 0.0;     // t^{-13/12} X (1 + X)
    double ratio = 0.0;
};

OdeResidual gamma_ode_residual(const Field& u_t, const Field& u_tdt, const PacketSpec& spec);

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    int n = 0;
};

// Least-squares slope of log|value| vs log t. Requires >= 5 samples spanning
// a factor >= 4 in t.
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& value);

struct MicrolocalReport {
    double residual_l2 = 0.0;  // || L Psi - e^{i phi} (four leading terms) ||_2
    double scale = 0.0;        // t^{-3/2} v^{-3/4} <v>^{-1/4}
    double constant = 0.0;     // residual / scale
};

// Residual of the linear-operator action on the packet against the four
// displayed leading terms; d_t Psi by centered differencing in t.
MicrolocalReport microlocal_residual(const PacketSpec& spec, const Grid& grid);

}  // namespace ccwave
