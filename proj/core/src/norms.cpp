#include "hydrostokes/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/transforms.hpp"

namespace hydrostokes {
namespace {

void check_exponent(double e, const char* name) {
  if (!(e >= 1.0)) throw ContractViolation(std::string("norm: exponent ") + name + " must be >= 1");
}

}  // namespace

std::vector<double> column_norms(const PhysicalField& f, double p) {
  check_exponent(p, "p");
  const Grid& g = f.grid();
  const int kk = g.k();
  const double w = g.h() / kk;
  std::vector<double> out(g.plane_size(), 0.0);
  std::vector<double> mag(kk);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      std::fill(mag.begin(), mag.end(), 0.0);
      for (int c = 0; c < f.ncomp(); ++c) {
        auto col = f.column(c, i, j);
        for (int k = 0; k < kk; ++k) mag[k] += col[k] * col[k];
      }
      double acc = 0.0;
      if (std::isinf(p)) {
        for (int k = 0; k < kk; ++k) acc = std::max(acc, std::sqrt(mag[k]));
      } else {
        for (int k = 0; k < kk; ++k) acc += std::pow(std::sqrt(mag[k]), p) * w;
        acc = std::pow(acc, 1.0 / p);
      }
      out[static_cast<std::size_t>(i) * g.n() + j] = acc;
    }
  return out;
}

double norm_anisotropic(const PhysicalField& f, double q, double p) {
  check_exponent(q, "q");
  check_exponent(p, "p");
  const auto cols = column_norms(f, p);
  if (std::isinf(q)) return *std::max_element(cols.begin(), cols.end());
  const double w = 1.0 / static_cast<double>(cols.size());
  double acc = 0.0;
  for (double v : cols) acc += std::pow(v, q) * w;
  return std::pow(acc, 1.0 / q);
}

double l2_norm(const SpectralField& c) {
  double acc = 0.0;
  for (const auto& z : c.data()) acc += std::norm(z);
  return std::sqrt(0.5 * c.grid().h() * acc);
}

double l2_inner(const SpectralField& a, const SpectralField& b) {
  require(a.grid() == b.grid() && a.ncomp() == b.ncomp(), "l2 inner: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (std::conj(a.data()[i]) * b.data()[i]).real();
  return 0.5 * a.grid().h() * acc;
}

double mixed_norm(const SpectralField& c, double q, double p) {
  return norm_anisotropic(inverse_transform(c), q, p);
}

double gradient_mixed_norm(const SpectralField& c, double q, double p) {
  return norm_anisotropic(gradient(c), q, p);
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ContractViolation("norm: cannot parse exponent '" + text + "'");
  }
  if (used != text.size()) throw ContractViolation("norm: cannot parse exponent '" + text + "'");
  check_exponent(v, "value");
  return v;
}

}  // namespace hydrostokes
