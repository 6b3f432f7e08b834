#pragma once

#include <cstdint>
#include <functional>

#include "hydrostokes/fields.hpp"

namespace hydrostokes {

/// A field defined independently of resolution, sampled on any grid of its depth.
using FieldFamily = std::function<SpectralField(const Grid&)>;

/// Random real two-component field with Gaussian coefficients of standard
/// deviation (1 + m^2 + n^2 + k^2)^(-decay/2) on the band |m|, |n| <= max_h,
/// k < max_k (-1 means the whole grid, Nyquist excluded).
///
/// With `solenoidal` set, the parallel part of every mode is made orthogonal to
/// (1/lambda_k)_k, so the vertical mean is horizontally divergence-free in
/// exact arithmetic and the field does not depend on the grid it is sampled on.
/// The result is scaled to unit L^2 norm (zero stays zero).
struct RandomFieldOptions {
  double decay = 2.0;
  int max_h = -1;
  int max_k = -1;
  bool solenoidal = true;
};

SpectralField random_field(const Grid& grid, std::uint64_t seed, const RandomFieldOptions& options = {});

/// random_field as a resolution-independent family; requires a finite band.
FieldFamily random_family(std::uint64_t seed, const RandomFieldOptions& options);

/// Flat-spectrum solenoidal field on the upper half of the resolved band
/// (max(|m|,|n|) >= N/4 or k >= K/2), unit L^2 norm.
SpectralField rough_field(const Grid& grid, std::uint64_t seed);

/// v = (0, amplitude sin(2 pi x) phi_0(z)): an exact solution of the nonlinear
/// problem (no self-advection) decaying like e^{-mu t}, mu = single_mode_rate.
SpectralField single_mode(const Grid& grid, double amplitude);
double single_mode_rate(const Grid& grid);

/// f = grad_perp(psi) b1(s) + grad(phi) b2(s), s = (z + h)/h, with
/// b1 = sin^8(pi s) and b2 = sin^8(pi s) cos(pi s), psi and phi random
/// trigonometric polynomials of degree max_h. Such f vanishes to high order at
/// both boundaries. With `vertical_derivative`, the family yields d_z f instead.
FieldFamily compact_profile_family(std::uint64_t seed, int max_h, bool vertical_derivative = false);

}  // namespace hydrostokes
