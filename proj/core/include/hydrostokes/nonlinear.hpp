#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hydrostokes/fields.hpp"

namespace hydrostokes {

/// w = -int_{-h}^z div_H v dr at the grid nodes. Vanishes at z = -h; at the
/// surface it equals -h div_H(mean v), so it vanishes for solenoidal v.
PhysicalField vertical_velocity(const SpectralField& v);

/// Buffers and quadrature tables for products of fields on one grid.
///
/// Horizontally the product is formed on a padded periodic grid of at least
/// 3N/2 points and truncated back (the 2/3 rule). Vertically the factors are
/// evaluated at Gauss-Legendre nodes, enough of them that the sine projection
/// of cubic trigonometric products is exact to rounding; this keeps
/// <(u.grad) v, v> = 0 at the discrete level. With dealiasing off, the
/// product is formed on the unpadded N x N x K collocation grid instead.
///
/// Not thread-safe; use one workspace per worker.
class NonlinearWorkspace {
 public:
  explicit NonlinearWorkspace(const Grid& grid, bool dealias = true);

  const Grid& grid() const { return grid_; }
  int padded_n() const { return np_; }
  int vertical_nodes() const { return static_cast<int>(nodes_.size()); }

  /// (u . grad) v = (u_H . grad_H) v + w(u) d_z v, where u = (u_src, w(u_src)).
  SpectralField advection(const SpectralField& u_src, const SpectralField& v);
  SpectralField advection(const SpectralField& v) { return advection(v, v); }

  /// grad_H . (u_src (x) v) + d_z(w(u_src) v), with d_z(w v) expanded by the
  /// product rule and d_z w taken from the series of w itself.
  SpectralField divergence_form(const SpectralField& u_src, const SpectralField& v);
  SpectralField divergence_form(const SpectralField& v) { return divergence_form(v, v); }

 private:
  enum class Deriv { none, x, y };

  // Node values on the padded grid, layout [i][j][q].
  std::vector<double> synthesize(const SpectralField& f, int comp, const Eigen::MatrixXd& vertical,
                                 Deriv deriv, double scale = 1.0);
  std::vector<double> synthesize_columns(const std::vector<Complex>& coeffs, const Eigen::MatrixXd& vertical,
                                         Deriv deriv, double scale);
  // Horizontal DFT of node values, truncated to the retained modes; layout [mi][ni][q].
  std::vector<Complex> analyze_horizontal(const std::vector<double>& values);
  void project_vertical(const std::vector<Complex>& columns, SpectralField& out, int comp) const;

  Grid grid_;
  int np_;
  std::vector<double> nodes_;  ///< vertical nodes z_q
  Eigen::MatrixXd sine_;       ///< phi_k(z_q)
  Eigen::MatrixXd slope_;      ///< phi_k'(z_q)
  Eigen::MatrixXd antideriv_;  ///< int_{-h}^{z_q} phi_k
  Eigen::MatrixXd project_;    ///< node values -> sine coefficients
  std::vector<Complex> buffer_;
};

SpectralField advection(const SpectralField& v);
SpectralField divergence_form(const SpectralField& v);

}  // namespace hydrostokes
