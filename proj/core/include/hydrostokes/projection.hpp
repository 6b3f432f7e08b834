#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hydrostokes/fields.hpp"

namespace hydrostokes {

/// Per-grid data of the hydrostatic Helmholtz projection.
///
/// The constant function 1 truncated to K sine modes has vertical mean
/// sigma_K < 1. Dividing the expansion by sigma_K gives beta_tilde, whose
/// vertical mean is exactly 1 in the truncated space; this makes the
/// projection exactly idempotent and its range exactly mean-free.
struct ProjectionTables {
  explicit ProjectionTables(const Grid& grid);

  std::vector<double> beta_tilde;  ///< beta_k / sigma_K

  /// Unit direction xi/|xi| of a horizontal mode, empty for xi = 0.
  static std::optional<std::pair<double, double>> direction(double xi_x, double xi_y);
};

/// The 2-D periodic Helmholtz projection Q on a two-component planar field.
/// Gradients are removed; the xi = 0 mode passes unchanged.
PlanarField helmholtz_2d(const PlanarField& g);

/// Hydrostatic projection P f = f - (1 - Q) mean(f), realized per mode by
/// removing the renormalized z-constant expansion of the mean along xi.
SpectralField project_hydrostatic(const SpectralField& f);

/// max over xi of |xi . mean(f)(xi)|, divided by ||f||_{L^2} (0 for f = 0).
double check_solenoidal(const SpectralField& f);

/// z-constant field g (x) 1 expanded with the renormalized coefficients.
SpectralField extend_constant_in_z(const PlanarField& g, const Grid& grid);

/// Surface pressure gradient for the hydrostatic Stokes resolvent/evolution:
/// xi_hat xi_hat . (mean(f) - (1/h) d_z v|_{z=-h}) per mode, zero at xi = 0.
PlanarField recover_pressure_gradient(const SpectralField& v, const SpectralField& f);

/// Surface pressure with zero horizontal mean.
PlanarField recover_pressure(const SpectralField& v, const SpectralField& f);

}  // namespace hydrostokes
