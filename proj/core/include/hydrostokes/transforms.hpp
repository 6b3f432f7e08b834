#pragma once

#include <vector>

#include "hydrostokes/fields.hpp"

namespace hydrostokes {

enum class Axis { x, y };

/// Relative imaginary residue tolerated by inverse_transform.
inline constexpr double kRealityTolerance = 1e-12;

/// Physical node values to Fourier x sine coefficients.
SpectralField forward_transform(const PhysicalField& f);

/// Coefficients to node values. Throws ContractViolation if the synthesized
/// field has an imaginary part above `reality_tol` times its magnitude.
PhysicalField inverse_transform(const SpectralField& c, double reality_tol = kRealityTolerance);

/// Multiplication by i xi_axis.
SpectralField horizontal_derivative(const SpectralField& c, Axis axis);

/// Horizontal divergence of a two-component field (scalar result).
SpectralField horizontal_divergence(const SpectralField& v);

/// -(|xi|^2 + lambda_k^2) c, the Laplacian with the vertical boundary conditions.
SpectralField laplacian(const SpectralField& c);

/// d/dz evaluated at the nodes through the cosine series
/// sum_k lambda_k c_k cos(lambda_k (z + h)). The result leaves the sine span,
/// so it is returned as node values.
PhysicalField vertical_derivative(const SpectralField& c);

/// (1/h) int_{-h}^0 f dz per horizontal mode.
PlanarField vertical_mean(const SpectralField& c);

/// int_{-h}^z f(r) dr for a scalar field, as node values; zero at z = -h.
PhysicalField vertical_integral_from_bottom(const SpectralField& c);

/// Node values of (d_x, d_y, d_z) of every component:
/// component 3*c + {0,1,2} holds the derivatives of component c.
PhysicalField gradient(const SpectralField& c);

/// Copy coefficients onto another grid with the same depth, zero-padding or
/// truncating. Nyquist modes of the source are dropped.
SpectralField resample(const SpectralField& c, const Grid& target);

/// Largest |c(m,n,k) - conj(c(-m,-n,k))| over the field.
double reality_defect(const SpectralField& c);

/// Replace c by the nearest field satisfying the reality condition.
void enforce_reality(SpectralField& c);

/// Complex node values of one component of a planar field (inverse 2-D DFT).
std::vector<Complex> planar_values(const PlanarField& f, int component);

/// 2-D DFT of complex node values, normalized as the inverse of planar_values.
PlanarField planar_from_values(const std::vector<std::vector<Complex>>& components, int n);

}  // namespace hydrostokes
