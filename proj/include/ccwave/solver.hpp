#pragma once

#include <functional>
#include <vector>

#include "ccwave/field.hpp"
#include "ccwave/spectral.hpp"

namespace ccwave {

struct SolverConfig {
    double dt = 0.0;          // <= 0 selects the default rule 0.5 / max|omega|
    double t_end = 0.0;
    bool dealias = true;
    bool nonlinear = true;    // false: pure linear propagation through the stepper
    int snapshot_every = 0;   // 0: only initial and final diagnostics
    Depth h = Depth::finite(1.0);
    double blowup_threshold = 1e12;
};

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double sup_ux = 0.0;
    double outside_mass_fraction = 0.0;
    bool wrapped = false;  // outside_mass_fraction > 1e-6
};

struct EvolveResult {
    Field u;  // physical space
    std::vector<DiagnosticsRecord> diagnostics;
    bool wrapped = false;
};

// Integrating-factor RK4 for uhat_t = i omega uhat + (i xi / 2) (u^2)^.
// The linear phase is advanced exactly (unitary); the quadratic term is
// dealiased by the 2/3 rule when enabled.
class Stepper {
  public:
    Stepper(const Grid& g, const Depth& h, double dt, bool dealias_on, double blowup_threshold = 1e12,
            bool nonlinear = true);

    // One step of the Fourier-space state; advances the timestamp.
    void step(Field& u) const;
    double dt() const { return dt_; }
    const SymbolTable& table() const { return table_; }

  private:
    void nonlinear(const std::vector<cplx>& in, std::vector<cplx>& out) const;
    void check_finite(const Field& u) const;

    Grid grid_;
    SymbolTable table_;
    double dt_;
    bool dealias_;
    bool nonlinear_;
    double blowup_;
    std::vector<cplx> e_half_, e_full_;   // exp(+/- i omega dt/2), exp(i omega dt)
    std::vector<cplx> e_half_conj_, e_full_conj_;
    std::vector<double> ixi_half_;        // xi/2 table
    std::vector<char> mask_;
    mutable std::vector<cplx> buf_a_, buf_b_, k1_, k2_, k3_, k4_;
};

double default_dt(const Grid& g, const Depth& h);

// One integrating-factor RK4 step (convenience wrapper; evolve() reuses one Stepper).
Field step(const Field& u, const SolverConfig& cfg);

using SnapshotSink = std::function<void(const Field& u_physical, const DiagnosticsRecord&)>;

// Repeated stepping from u0.t to cfg.t_end with diagnostics every
// snapshot_every steps. u0 may be physical or Fourier; result is physical.
EvolveResult evolve(const Field& u0, const SolverConfig& cfg, const SnapshotSink& sink = nullptr);

// Conserved quantities. mass = int u^2; energy = the depth-h Hamiltonian
// (the h^{-1} u^2 term is dropped at infinite depth).
double mass(const Field& u);
double energy(const Field& u);
DiagnosticsRecord diagnose(const Field& u_physical);

// lambda u(lambda^2 t, lambda x, lambda^{3/2} y): returns a field on the
// scaled grid (Lx/lambda, Ly/lambda^{3/2}) at time t/lambda^2 with depth
// h/lambda. Exact spectral map for any lambda > 0.
Field apply_scaling(const Field& u, double lambda);

// Galilean shear u(t, x + c y - c^2 t, y - 2 c t) realized in Fourier space
// as uhat(xi,eta) -> exp(i c^2 t xi) exp(-2 i c t eta) uhat(xi, eta - c xi).
// Requires c Ly / Lx integral (torus-compatible shear).
Field apply_galilean(const Field& u, double c);

}  // namespace ccwave
