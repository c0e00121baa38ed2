#pragma once

#include <complex>

namespace ccwave {

// Oscillatory kernel of the unit-depth linear propagator,
//   k(t,x) = (2*pi)^{-1/2} p.v. int |xi|^{1/2} exp(i t (xi^2 coth xi - xi) + i x xi) dxi,
// evaluated by adaptive quadrature with a smooth high-frequency taper on
// [cutoff, 2*cutoff]. The taper cutoff is doubled until the value is stable
// to tol; failure to converge within the doubling budget raises an
// accuracy_error carrying the achieved estimate. The two half-lines are
// integrated independently, so the imaginary part vanishing is a numerical
// outcome, not an identity of the implementation.
std::complex<double> kernel_oscillatory(double t, double x, double cutoff, double tol);

}  // namespace ccwave
