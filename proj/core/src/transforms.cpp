#include "hydrostokes/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "hydrostokes/errors.hpp"

namespace hydrostokes {
namespace {

using detail::Direction;
using detail::Trig;

// Horizontal synthesis of one component: real parts of
// sum_{m,n} c(m,n,k) e^{2 pi i (m x_i + n y_j)} in layout [i][j][k].
std::vector<double> horizontal_synthesis(const SpectralField& c, int comp, double reality_tol) {
  const Grid& g = c.grid();
  auto src = c.component(comp);
  std::vector<Complex> buf(src.begin(), src.end());
  detail::dft2_interleaved(buf.data(), g.n(), g.k(), Direction::backward);
  double scale = 0.0;
  double residue = 0.0;
  for (const auto& z : buf) {
    scale = std::max(scale, std::abs(z));
    residue = std::max(residue, std::abs(z.imag()));
  }
  if (residue > reality_tol * scale) {
    throw ContractViolation("inverse transform: imaginary residue " + std::to_string(residue) +
                            " exceeds tolerance relative to field magnitude " +
                            std::to_string(scale));
  }
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

// f_j = sum_k a_k sin(pi (2k+1)(2j+1) / 4K) for every column, in place.
void sine_synthesis(std::vector<double>& cols, int k) {
  detail::r2r_columns(cols.data(), k, static_cast<int>(cols.size() / k), Trig::dst4);
  for (auto& v : cols) v *= 0.5;
}

// f_j = sum_k a_k cos(pi (2k+1)(2j+1) / 4K) for every column, in place.
void cosine_synthesis(std::vector<double>& cols, int k) {
  detail::r2r_columns(cols.data(), k, static_cast<int>(cols.size() / k), Trig::dct4);
  for (auto& v : cols) v *= 0.5;
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
  const Grid& g = f.grid();
  require(f.ncomp() == 1 || f.ncomp() == 2, "forward transform: ncomp must be 1 or 2");
  SpectralField out(g, f.ncomp());
  const double vscale = 1.0 / g.k();
  const double hscale = 1.0 / static_cast<double>(g.plane_size());
  for (int c = 0; c < f.ncomp(); ++c) {
    auto src = f.component(c);
    std::vector<double> cols(src.begin(), src.end());
    detail::r2r_columns(cols.data(), g.k(), static_cast<int>(g.plane_size()), Trig::dst4);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < cols.size(); ++i) dst[i] = Complex(cols[i] * vscale, 0.0);
    detail::dft2_interleaved(dst.data(), g.n(), g.k(), Direction::forward);
    for (auto& z : dst) z *= hscale;
  }
  return out;
}

PhysicalField inverse_transform(const SpectralField& c, double reality_tol) {
  const Grid& g = c.grid();
  PhysicalField out(g, c.ncomp());
  for (int comp = 0; comp < c.ncomp(); ++comp) {
    auto cols = horizontal_synthesis(c, comp, reality_tol);
    sine_synthesis(cols, g.k());
    std::copy(cols.begin(), cols.end(), out.component(comp).begin());
  }
  return out;
}

SpectralField horizontal_derivative(const SpectralField& c, Axis axis) {
  const Grid& g = c.grid();
  SpectralField out(g, c.ncomp());
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int mi = 0; mi < g.n(); ++mi)
      for (int ni = 0; ni < g.n(); ++ni) {
        const double xi = axis == Axis::x ? g.wavenumber(mi) : g.wavenumber(ni);
        const Complex factor(0.0, xi);
        auto src = c.column(comp, mi, ni);
        auto dst = out.column(comp, mi, ni);
        for (int k = 0; k < g.k(); ++k) dst[k] = factor * src[k];
      }
  return out;
}

SpectralField horizontal_divergence(const SpectralField& v) {
  require(v.ncomp() == 2, "horizontal divergence: ncomp must be 2");
  const Grid& g = v.grid();
  SpectralField out(g, 1);
  for (int mi = 0; mi < g.n(); ++mi)
    for (int ni = 0; ni < g.n(); ++ni) {
      const Complex ix(0.0, g.wavenumber(mi));
      const Complex iy(0.0, g.wavenumber(ni));
      auto vx = v.column(0, mi, ni);
      auto vy = v.column(1, mi, ni);
      auto dst = out.column(0, mi, ni);
      for (int k = 0; k < g.k(); ++k) dst[k] = ix * vx[k] + iy * vy[k];
    }
  return out;
}

SpectralField laplacian(const SpectralField& c) {
  const Grid& g = c.grid();
  SpectralField out(g, c.ncomp());
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int mi = 0; mi < g.n(); ++mi)
      for (int ni = 0; ni < g.n(); ++ni) {
        const double xi2 = g.xi_squared(mi, ni);
        auto src = c.column(comp, mi, ni);
        auto dst = out.column(comp, mi, ni);
        for (int k = 0; k < g.k(); ++k) dst[k] = -(xi2 + g.lambda(k) * g.lambda(k)) * src[k];
      }
  return out;
}

PhysicalField vertical_derivative(const SpectralField& c) {
  const Grid& g = c.grid();
  PhysicalField out(g, c.ncomp());
  for (int comp = 0; comp < c.ncomp(); ++comp) {
    auto cols = horizontal_synthesis(c, comp, kRealityTolerance);
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] *= g.lambda(static_cast<int>(i % g.k()));
    cosine_synthesis(cols, g.k());
    std::copy(cols.begin(), cols.end(), out.component(comp).begin());
  }
  return out;
}

PlanarField vertical_mean(const SpectralField& c) {
  const Grid& g = c.grid();
  PlanarField out(g.n(), c.ncomp());
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int mi = 0; mi < g.n(); ++mi)
      for (int ni = 0; ni < g.n(); ++ni) {
        auto col = c.column(comp, mi, ni);
        Complex sum{};
        for (int k = 0; k < g.k(); ++k) sum += col[k] / g.lambda(k);
        out(comp, mi, ni) = sum / g.h();
      }
  return out;
}

PhysicalField vertical_integral_from_bottom(const SpectralField& c) {
  require(c.ncomp() == 1, "vertical integral: scalar field required");
  const Grid& g = c.grid();
  auto cols = horizontal_synthesis(c, 0, kRealityTolerance);
  const int kk = g.k();
  const std::size_t ncol = cols.size() / kk;
  std::vector<double> totals(ncol, 0.0);
  for (std::size_t col = 0; col < ncol; ++col)
    for (int k = 0; k < kk; ++k) {
      double& a = cols[col * kk + k];
      a /= g.lambda(k);
      totals[col] += a;
    }
  cosine_synthesis(cols, kk);
  PhysicalField out(g, 1);
  auto dst = out.component(0);
  for (std::size_t col = 0; col < ncol; ++col)
    for (int k = 0; k < kk; ++k) dst[col * kk + k] = totals[col] - cols[col * kk + k];
  return out;
}

PhysicalField gradient(const SpectralField& c) {
  const Grid& g = c.grid();
  PhysicalField out(g, 3 * c.ncomp());
  const PhysicalField parts[3] = {inverse_transform(horizontal_derivative(c, Axis::x)),
                                  inverse_transform(horizontal_derivative(c, Axis::y)),
                                  vertical_derivative(c)};
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int a = 0; a < 3; ++a) {
      auto src = parts[a].component(comp);
      std::copy(src.begin(), src.end(), out.component(3 * comp + a).begin());
    }
  return out;
}

SpectralField resample(const SpectralField& c, const Grid& target) {
  const Grid& g = c.grid();
  require(g.h() == target.h(), "resample: depth mismatch");
  SpectralField out(target, c.ncomp());
  const int half = std::min(g.n(), target.n()) / 2;
  const int kk = std::min(g.k(), target.k());
  auto to_index = [](int m, int n) { return m >= 0 ? m : m + n; };
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int m = -half + 1; m < half; ++m)
      for (int n = -half + 1; n < half; ++n) {
        auto src = c.column(comp, to_index(m, g.n()), to_index(n, g.n()));
        auto dst = out.column(comp, to_index(m, target.n()), to_index(n, target.n()));
        for (int k = 0; k < kk; ++k) dst[k] = src[k];
      }
  return out;
}

double reality_defect(const SpectralField& c) {
  const Grid& g = c.grid();
  const int n = g.n();
  double worst = 0.0;
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int mi = 0; mi < n; ++mi)
      for (int ni = 0; ni < n; ++ni) {
        auto a = c.column(comp, mi, ni);
        auto b = c.column(comp, (n - mi) % n, (n - ni) % n);
        for (int k = 0; k < g.k(); ++k) worst = std::max(worst, std::abs(a[k] - std::conj(b[k])));
      }
  return worst;
}

void enforce_reality(SpectralField& c) {
  const Grid& g = c.grid();
  const int n = g.n();
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int mi = 0; mi < n; ++mi)
      for (int ni = 0; ni < n; ++ni) {
        const int pm = (n - mi) % n;
        const int pn = (n - ni) % n;
        // Visit each conjugate pair once; self-conjugate modes become real.
        if (std::make_pair(pm, pn) < std::make_pair(mi, ni)) continue;
        auto a = c.column(comp, mi, ni);
        auto b = c.column(comp, pm, pn);
        for (int k = 0; k < g.k(); ++k) {
          const Complex avg = 0.5 * (a[k] + std::conj(b[k]));
          a[k] = avg;
          b[k] = std::conj(avg);
        }
      }
}

std::vector<Complex> planar_values(const PlanarField& f, int component) {
  const int n = f.n();
  std::vector<Complex> buf(f.data().begin() + static_cast<std::ptrdiff_t>(component) * n * n,
                           f.data().begin() + static_cast<std::ptrdiff_t>(component + 1) * n * n);
  detail::dft2_interleaved(buf.data(), n, 1, Direction::backward);
  return buf;
}

PlanarField planar_from_values(const std::vector<std::vector<Complex>>& components, int n) {
  PlanarField out(n, static_cast<int>(components.size()));
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (std::size_t c = 0; c < components.size(); ++c) {
    require(components[c].size() == static_cast<std::size_t>(n) * n, "planar transform: shape");
    std::vector<Complex> buf = components[c];
    detail::dft2_interleaved(buf.data(), n, 1, Direction::forward);
    for (int mi = 0; mi < n; ++mi)
      for (int ni = 0; ni < n; ++ni) out(static_cast<int>(c), mi, ni) = buf[mi * n + ni] * scale;
  }
  return out;
}

}  // namespace hydrostokes
