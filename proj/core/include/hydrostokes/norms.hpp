#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hydrostokes/fields.hpp"

namespace hydrostokes {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ||f||_{L^q_H L^p_z}: vertical L^p by the midpoint rule (weights h/K, max
/// if p = inf), then horizontal L^q with node weights 1/N^2 (max if q = inf).
/// Vector fields use the pointwise Euclidean magnitude over all components.
///
/// The q = inf case is the maximum over horizontal nodes, a proxy for the
/// essential supremum that can under-resolve narrow peaks; refine N to check.
double norm_anisotropic(const PhysicalField& f, double q, double p);

/// Per-column vertical L^p norms of the pointwise magnitude, layout [i][j].
std::vector<double> column_norms(const PhysicalField& f, double p);

/// L^2(Omega) norm from the coefficients: ||f||^2 = (h/2) sum |c|^2.
double l2_norm(const SpectralField& c);

/// Real L^2(Omega) inner product from the coefficients.
double l2_inner(const SpectralField& a, const SpectralField& b);

/// ||f||_{L^q_H L^p_z} of a spectral field evaluated at its nodes.
double mixed_norm(const SpectralField& c, double q, double p);

/// ||grad f||_{L^q_H L^p_z} using the full 3-D gradient of every component.
double gradient_mixed_norm(const SpectralField& c, double q, double p);

/// Parses "inf" / "infinity" or a number >= 1.
double parse_exponent(const std::string& text);

}  // namespace hydrostokes
