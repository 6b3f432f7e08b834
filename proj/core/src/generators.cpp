#include "hydrostokes/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/norms.hpp"
#include "hydrostokes/projection.hpp"
#include "hydrostokes/transforms.hpp"

namespace hydrostokes {
namespace {

constexpr double kPi = std::numbers::pi;

int grid_index(int m, int n) { return m < 0 ? m + n : m; }

// True for one representative of every conjugate pair {xi, -xi}.
bool canonical(int m, int n) { return m > 0 || (m == 0 && n >= 0); }

// Remove the component of each parallel column along (1/lambda_k), k < kmax.
void make_solenoidal(SpectralField& f, int kmax) {
  const Grid& g = f.grid();
  std::vector<double> w(kmax);
  double ww = 0.0;
  for (int k = 0; k < kmax; ++k) {
    w[k] = 1.0 / g.lambda(k);
    ww += w[k] * w[k];
  }
  for (int mi = 0; mi < g.n(); ++mi)
    for (int ni = 0; ni < g.n(); ++ni) {
      const auto dir = ProjectionTables::direction(g.wavenumber(mi), g.wavenumber(ni));
      if (!dir) continue;
      const auto [ex, ey] = *dir;
      auto cx = f.column(0, mi, ni);
      auto cy = f.column(1, mi, ni);
      Complex dot{};
      for (int k = 0; k < kmax; ++k) dot += w[k] * (ex * cx[k] + ey * cy[k]);
      for (int k = 0; k < kmax; ++k) {
        const Complex shift = dot / ww * w[k];
        cx[k] -= ex * shift;
        cy[k] -= ey * shift;
      }
    }
}

void normalize(SpectralField& f) {
  const double norm = l2_norm(f);
  if (norm > 0.0) f *= 1.0 / norm;
}

// Gaussian coefficients on the band, drawn in an order that depends only on
// the signed indices so every grid containing the band sees the same field.
SpectralField band_field(const Grid& grid, std::uint64_t seed, double decay, int max_h, int max_k,
                         bool (*keep)(const Grid&, int, int, int)) {
  SpectralField f(grid, 2);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int m = -max_h; m <= max_h; ++m)
    for (int n = -max_h; n <= max_h; ++n) {
      if (!canonical(m, n)) continue;
      for (int k = 0; k < max_k; ++k)
        for (int c = 0; c < 2; ++c) {
          const double sd = std::pow(1.0 + m * m + n * n + k * k, -0.5 * decay);
          double re = normal(rng) * sd;
          double im = normal(rng) * sd;
          if (!keep(grid, m, n, k)) continue;
          if (m == 0 && n == 0) im = 0.0;
          const int mi = grid_index(m, grid.n());
          const int ni = grid_index(n, grid.n());
          f(c, mi, ni, k) = Complex(re, im);
          f(c, grid_index(-m, grid.n()), grid_index(-n, grid.n()), k) = Complex(re, -im);
        }
    }
  return f;
}

bool keep_all(const Grid&, int, int, int) { return true; }

bool keep_rough(const Grid& g, int m, int n, int k) {
  return std::max(std::abs(m), std::abs(n)) >= g.n() / 4 || k >= g.k() / 2;
}

}  // namespace

SpectralField random_field(const Grid& grid, std::uint64_t seed, const RandomFieldOptions& options) {
  const int full_h = grid.n() / 2 - 1;
  const int max_h = options.max_h < 0 ? full_h : options.max_h;
  const int max_k = options.max_k < 0 ? grid.k() : options.max_k;
  require(max_h <= full_h, "random_field: horizontal band exceeds the grid");
  require(max_k <= grid.k(), "random_field: vertical band exceeds the grid");
  SpectralField f = band_field(grid, seed, options.decay, max_h, max_k, keep_all);
  if (options.solenoidal) make_solenoidal(f, max_k);
  normalize(f);
  return f;
}

FieldFamily random_family(std::uint64_t seed, const RandomFieldOptions& options) {
  require(options.max_h >= 0 && options.max_k >= 1, "random_family: a finite band is required");
  return [seed, options](const Grid& grid) { return random_field(grid, seed, options); };
}

SpectralField rough_field(const Grid& grid, std::uint64_t seed) {
  SpectralField f = band_field(grid, seed, 0.0, grid.n() / 2 - 1, grid.k(), keep_rough);
  make_solenoidal(f, grid.k());
  normalize(f);
  return f;
}

SpectralField single_mode(const Grid& grid, double amplitude) {
  SpectralField f(grid, 2);
  // sin(2 pi x) = (e^{2 pi i x} - e^{-2 pi i x}) / 2i
  const Complex half = amplitude / Complex(0.0, 2.0);
  f(1, 1, 0, 0) = half;
  f(1, grid.n() - 1, 0, 0) = -half;
  return f;
}

double single_mode_rate(const Grid& grid) { return 4.0 * kPi * kPi + grid.lambda(0) * grid.lambda(0); }

FieldFamily compact_profile_family(std::uint64_t seed, int max_h, bool vertical_derivative) {
  require(max_h >= 1, "compact_profile_family: max_h must be positive");
  return [seed, max_h, vertical_derivative](const Grid& grid) {
    require(grid.n() / 2 - 1 >= max_h, "compact_profile_family: grid too coarse for the band");
    const int kk = grid.k();
    const double h = grid.h();
    // Vertical profiles and their sine coefficients (2/K) sum_j b(z_j) phi_k(z_j).
    std::vector<double> b1(kk), b2(kk);
    for (int j = 0; j < kk; ++j) {
      const double s = (grid.node_z(j) + h) / h;
      const double sn = std::sin(kPi * s);
      const double cs = std::cos(kPi * s);
      if (vertical_derivative) {
        b1[j] = 8.0 * kPi / h * std::pow(sn, 7) * cs;
        b2[j] = kPi / h * (8.0 * std::pow(sn, 7) * cs * cs - std::pow(sn, 9));
      } else {
        b1[j] = std::pow(sn, 8);
        b2[j] = std::pow(sn, 8) * cs;
      }
    }
    std::vector<double> c1(kk, 0.0), c2(kk, 0.0);
    for (int k = 0; k < kk; ++k)
      for (int j = 0; j < kk; ++j) {
        const double phi = std::sin(grid.lambda(k) * (grid.node_z(j) + h));
        c1[k] += 2.0 / kk * b1[j] * phi;
        c2[k] += 2.0 / kk * b2[j] * phi;
      }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    SpectralField f(grid, 2);
    for (int m = -max_h; m <= max_h; ++m)
      for (int n = -max_h; n <= max_h; ++n) {
        if (!canonical(m, n) || (m == 0 && n == 0)) continue;
        const double sd = std::pow(1.0 + m * m + n * n, -1.5);
        const Complex psi(normal(rng) * sd, normal(rng) * sd);
        const Complex phi(normal(rng) * sd, normal(rng) * sd);
        const double xx = 2.0 * kPi * m;
        const double xy = 2.0 * kPi * n;
        const Complex i(0.0, 1.0);
        // grad_perp psi = (-d_y psi, d_x psi), grad phi = (d_x phi, d_y phi)
        const Complex g1x = -i * xy * psi;
        const Complex g1y = i * xx * psi;
        const Complex g2x = i * xx * phi;
        const Complex g2y = i * xy * phi;
        const int mi = grid_index(m, grid.n());
        const int ni = grid_index(n, grid.n());
        const int mj = grid_index(-m, grid.n());
        const int nj = grid_index(-n, grid.n());
        for (int k = 0; k < kk; ++k) {
          const Complex vx = g1x * c1[k] + g2x * c2[k];
          const Complex vy = g1y * c1[k] + g2y * c2[k];
          f(0, mi, ni, k) = vx;
          f(1, mi, ni, k) = vy;
          f(0, mj, nj, k) = std::conj(vx);
          f(1, mj, nj, k) = std::conj(vy);
        }
      }
    return f;
  };
}

}  // namespace hydrostokes
