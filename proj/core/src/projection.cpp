#include "hydrostokes/projection.hpp"

#include <algorithm>
#include <cmath>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/norms.hpp"
#include "hydrostokes/transforms.hpp"

namespace hydrostokes {

ProjectionTables::ProjectionTables(const Grid& grid) {
  const auto& vb = grid.vertical();
  beta_tilde.resize(vb.betas.size());
  for (std::size_t k = 0; k < vb.betas.size(); ++k) beta_tilde[k] = vb.betas[k] / vb.sigma;
}

std::optional<std::pair<double, double>> ProjectionTables::direction(double xi_x, double xi_y) {
  const double norm = std::hypot(xi_x, xi_y);
  if (norm == 0.0) return std::nullopt;
  return std::make_pair(xi_x / norm, xi_y / norm);
}

PlanarField helmholtz_2d(const PlanarField& g) {
  require(g.ncomp() == 2, "helmholtz_2d: two-component field required");
  const int n = g.n();
  PlanarField out = g;
  for (int mi = 0; mi < n; ++mi)
    for (int ni = 0; ni < n; ++ni) {
      const auto dir = ProjectionTables::direction(fourier_wavenumber(mi, n), fourier_wavenumber(ni, n));
      if (!dir) continue;
      const auto [ex, ey] = *dir;
      const Complex par = ex * g(0, mi, ni) + ey * g(1, mi, ni);
      out(0, mi, ni) -= ex * par;
      out(1, mi, ni) -= ey * par;
    }
  return out;
}

SpectralField project_hydrostatic(const SpectralField& f) {
  require(f.ncomp() == 2, "project_hydrostatic: two-component field required");
  const Grid& g = f.grid();
  const ProjectionTables tables(g);
  const PlanarField mean = vertical_mean(f);
  SpectralField out = f;
  for (int mi = 0; mi < g.n(); ++mi)
    for (int ni = 0; ni < g.n(); ++ni) {
      const auto dir = ProjectionTables::direction(g.wavenumber(mi), g.wavenumber(ni));
      if (!dir) continue;
      const auto [ex, ey] = *dir;
      const Complex par_mean = ex * mean(0, mi, ni) + ey * mean(1, mi, ni);
      auto cx = out.column(0, mi, ni);
      auto cy = out.column(1, mi, ni);
      for (int k = 0; k < g.k(); ++k) {
        const Complex shift = par_mean * tables.beta_tilde[k];
        cx[k] -= ex * shift;
        cy[k] -= ey * shift;
      }
    }
  return out;
}

double check_solenoidal(const SpectralField& f) {
  require(f.ncomp() == 2, "check_solenoidal: two-component field required");
  const Grid& g = f.grid();
  const double norm = l2_norm(f);
  if (norm == 0.0) return 0.0;
  const PlanarField mean = vertical_mean(f);
  double worst = 0.0;
  for (int mi = 0; mi < g.n(); ++mi)
    for (int ni = 0; ni < g.n(); ++ni) {
      const Complex div = g.wavenumber(mi) * mean(0, mi, ni) + g.wavenumber(ni) * mean(1, mi, ni);
      worst = std::max(worst, std::abs(div));
    }
  return worst / norm;
}

SpectralField extend_constant_in_z(const PlanarField& planar, const Grid& grid) {
  require(planar.n() == grid.n(), "extend_constant_in_z: grid mismatch");
  require(planar.ncomp() == 1 || planar.ncomp() == 2, "extend_constant_in_z: ncomp must be 1 or 2");
  const ProjectionTables tables(grid);
  SpectralField out(grid, planar.ncomp());
  for (int c = 0; c < planar.ncomp(); ++c)
    for (int mi = 0; mi < grid.n(); ++mi)
      for (int ni = 0; ni < grid.n(); ++ni) {
        auto col = out.column(c, mi, ni);
        for (int k = 0; k < grid.k(); ++k) col[k] = planar(c, mi, ni) * tables.beta_tilde[k];
      }
  return out;
}

PlanarField recover_pressure_gradient(const SpectralField& v, const SpectralField& f) {
  require(v.ncomp() == 2 && f.ncomp() == 2, "recover_pressure_gradient: two-component fields required");
  require(v.grid() == f.grid(), "recover_pressure_gradient: grid mismatch");
  const Grid& g = v.grid();
  const PlanarField fmean = vertical_mean(f);
  PlanarField out(g.n(), 2);
  for (int mi = 0; mi < g.n(); ++mi)
    for (int ni = 0; ni < g.n(); ++ni) {
      const auto dir = ProjectionTables::direction(g.wavenumber(mi), g.wavenumber(ni));
      if (!dir) continue;
      const auto [ex, ey] = *dir;
      // d_z phi_k(-h) = lambda_k, so the bottom shear of mode (m,n) is sum_k lambda_k c_k.
      Complex shear[2] = {};
      for (int c = 0; c < 2; ++c) {
        auto col = v.column(c, mi, ni);
        for (int k = 0; k < g.k(); ++k) shear[c] += g.lambda(k) * col[k];
      }
      const Complex rhs_x = fmean(0, mi, ni) - shear[0] / g.h();
      const Complex rhs_y = fmean(1, mi, ni) - shear[1] / g.h();
      const Complex par = ex * rhs_x + ey * rhs_y;
      out(0, mi, ni) = ex * par;
      out(1, mi, ni) = ey * par;
    }
  return out;
}

PlanarField recover_pressure(const SpectralField& v, const SpectralField& f) {
  const PlanarField grad = recover_pressure_gradient(v, f);
  const int n = grad.n();
  PlanarField out(n, 1);
  for (int mi = 0; mi < n; ++mi)
    for (int ni = 0; ni < n; ++ni) {
      const double xx = fourier_wavenumber(mi, n);
      const double xy = fourier_wavenumber(ni, n);
      const double xi2 = xx * xx + xy * xy;
      if (xi2 == 0.0) continue;
      // grad pi = i xi pi  =>  pi = -i xi . grad pi / |xi|^2
      out(0, mi, ni) = Complex(0.0, -1.0) * (xx * grad(0, mi, ni) + xy * grad(1, mi, ni)) / xi2;
    }
  return out;
}

}  // namespace hydrostokes
