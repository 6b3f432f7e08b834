#pragma once

// Thin wrappers over FFTW plans. Internal to the core library.

#include <complex>

namespace hydrostokes::detail {

enum class Direction { forward, backward };

/// Unnormalized in-place 2-D DFT of `howmany` interleaved N x N planes.
/// Element (i, j) of plane p lives at data[(i*N + j)*howmany + p].
void dft2_interleaved(std::complex<double>* data, int n, int howmany, Direction dir);

enum class Trig { dst4, dct4, dst2, dct3 };

/// Unnormalized in-place real trigonometric transform (FFTW r2r conventions)
/// of `howmany` contiguous columns of length `len`.
void r2r_columns(double* data, int len, int howmany, Trig kind);

}  // namespace hydrostokes::detail
