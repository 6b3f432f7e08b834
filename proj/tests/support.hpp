#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "hydrostokes/fields.hpp"
#include "hydrostokes/transforms.hpp"

namespace hydrostokes::testing {

inline constexpr double kPi = std::numbers::pi;

/// Uniform noise in [-1, 1] at every node.
inline PhysicalField noise(const Grid& g, int ncomp, std::uint64_t seed) {
  PhysicalField f(g, ncomp);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : f.data()) v = u(rng);
  return f;
}

/// A real field with every resolved coefficient populated (Nyquist rows cleared).
inline SpectralField dense_field(const Grid& g, int ncomp, std::uint64_t seed) {
  SpectralField c = forward_transform(noise(g, ncomp, seed));
  const int n = g.n();
  for (int comp = 0; comp < ncomp; ++comp)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < g.k(); ++k) {
        c(comp, n / 2, i, k) = 0.0;
        c(comp, i, n / 2, k) = 0.0;
      }
  return c;
}

enum class Eval { value, dx, dy, dz, antiderivative };

/// Direct summation of the Fourier x sine series of one component at (x, y, z).
/// Nyquist coefficients are ignored. `antiderivative` is int_{-h}^z.
inline double evaluate(const SpectralField& c, int comp, double x, double y, double z, Eval what = Eval::value) {
  const Grid& g = c.grid();
  const double h = g.h();
  std::complex<double> acc{};
  for (int mi = 0; mi < g.n(); ++mi)
    for (int ni = 0; ni < g.n(); ++ni) {
      if (g.is_nyquist(mi) || g.is_nyquist(ni)) continue;
      const int m = g.signed_index(mi);
      const int n = g.signed_index(ni);
      const std::complex<double> e = std::polar(1.0, 2.0 * kPi * (m * x + n * y));
      std::complex<double> factor = 1.0;
      if (what == Eval::dx) factor = std::complex<double>(0.0, 2.0 * kPi * m);
      if (what == Eval::dy) factor = std::complex<double>(0.0, 2.0 * kPi * n);
      for (int k = 0; k < g.k(); ++k) {
        const double lam = (2.0 * k + 1.0) * kPi / (2.0 * h);
        double profile = std::sin(lam * (z + h));
        if (what == Eval::dz) profile = lam * std::cos(lam * (z + h));
        if (what == Eval::antiderivative) profile = (1.0 - std::cos(lam * (z + h))) / lam;
        acc += c(comp, mi, ni, k) * factor * e * profile;
      }
    }
  return acc.real();
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs(const std::vector<double>& a) {
  double d = 0.0;
  for (double v : a) d = std::max(d, std::abs(v));
  return d;
}

inline double coeff_distance(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

}  // namespace hydrostokes::testing
