#pragma once

#include "ccwave/field.hpp"

namespace ccwave {

// Isometric-normalized discrete Fourier transforms (FFTW backend).
// Round trip is the identity to machine precision; Parseval holds exactly
// in the Riemann-sum sense. Plans are cached per shape and are safe to use
// from multiple threads.
Field to_fourier(const Field& f);
Field to_physical(const Field& f);

// In-place transforms on a raw buffer laid out like Field::data for `g`.
// Used by the time stepper to avoid copies.
void forward_inplace(const Grid& g, cplx* data);
void backward_inplace(const Grid& g, cplx* data);

// Per-y-row 1D transform in x (stride ny), used by the z-coordinate shear.
void forward_rows_inplace(const Grid& g, cplx* data);
void backward_rows_inplace(const Grid& g, cplx* data);

}  // namespace ccwave
