#include "hydrostokes/grid.hpp"

#include <cmath>
#include <string>

#include "hydrostokes/errors.hpp"

namespace hydrostokes {

VerticalBasis::VerticalBasis(int k, double h) {
  lambdas.resize(k);
  betas.resize(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    lambdas[i] = (2.0 * i + 1.0) * std::numbers::pi / (2.0 * h);
    betas[i] = 2.0 / (h * lambdas[i]);
    sum += 1.0 / (lambdas[i] * lambdas[i]);
  }
  sigma = 2.0 / (h * h) * sum;
}

Grid::Grid(int n, int k, double h) : n_(n), k_(k), h_(h) {
  require(n >= 4 && n % 2 == 0, "grid: N must be even and >= 4, got " + std::to_string(n));
  require(k >= 1, "grid: K must be >= 1, got " + std::to_string(k));
  require(std::isfinite(h) && h > 0.0, "grid: h must be positive");
  basis_ = std::make_shared<const VerticalBasis>(k, h);
}

double Grid::xi_squared(int mi, int ni) const {
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * two_pi * index_squared(mi, ni);
}

int Grid::index_squared(int mi, int ni) const {
  const int m = signed_index(mi);
  const int n = signed_index(ni);
  return m * m + n * n;
}

Grid Grid::padded() const {
  int np = (3 * n_ + 1) / 2;
  if (np % 2 != 0) ++np;
  const int kp = (3 * k_ + 1) / 2;
  return Grid(np, kp, h_);
}

}  // namespace hydrostokes
