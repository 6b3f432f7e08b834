#include "hydrostokes/stokes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/expm.hpp"
#include "hydrostokes/projection.hpp"

namespace hydrostokes {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

enum CacheKind : int { kExp = 0, kPhi1 = 1 };

constexpr double kSingularityTolerance = 1e-10;
constexpr double kResidualTolerance = 1e-10;

VectorXcd load(std::span<const Complex> col) {
  VectorXcd v(static_cast<Eigen::Index>(col.size()));
  for (std::size_t k = 0; k < col.size(); ++k) v(static_cast<Eigen::Index>(k)) = col[k];
  return v;
}

void store(const VectorXcd& v, std::span<Complex> col) {
  for (std::size_t k = 0; k < col.size(); ++k) col[k] = v(static_cast<Eigen::Index>(k));
}

VectorXcd real_times(const MatrixXd& m, const VectorXcd& v) {
  VectorXcd out(m.rows());
  out.real() = m * v.real();
  out.imag() = m * v.imag();
  return out;
}

// Applies a per-mode map to a two-component field. Coupled modes are
// rotated into (parallel, perpendicular) coordinates first.
template <class Coupled, class Uncoupled>
SpectralField map_modes(const SpectralField& v, Coupled&& on_coupled, Uncoupled&& on_uncoupled) {
  require(v.ncomp() == 2, "stokes operator: two-component field required");
  const Grid& g = v.grid();
  SpectralField out(g, 2);
  for (int mi = 0; mi < g.n(); ++mi)
    for (int ni = 0; ni < g.n(); ++ni) {
      auto is_zero = [](std::span<const Complex> col) {
        return std::all_of(col.begin(), col.end(), [](const Complex& z) { return z == Complex{}; });
      };
      // Every per-mode map is linear; empty modes stay empty.
      if (is_zero(v.column(0, mi, ni)) && is_zero(v.column(1, mi, ni))) continue;
      const ModeOperator op = build_mode_operator(g, mi, ni);
      const VectorXcd cx = load(v.column(0, mi, ni));
      const VectorXcd cy = load(v.column(1, mi, ni));
      if (!op.coupled) {
        store(on_uncoupled(op, cx), out.column(0, mi, ni));
        store(on_uncoupled(op, cy), out.column(1, mi, ni));
        continue;
      }
      const auto [ex, ey] = *ProjectionTables::direction(op.xi_x, op.xi_y);
      VectorXcd par = ex * cx + ey * cy;
      VectorXcd perp = -ey * cx + ex * cy;
      on_coupled(op, par, perp);
      store(ex * par - ey * perp, out.column(0, mi, ni));
      store(ey * par + ex * perp, out.column(1, mi, ni));
    }
  return out;
}

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

}  // namespace

MatrixXd ModeOperator::parallel_block() const {
  MatrixXd m = coupling;
  m.diagonal() += diagonal;
  return m;
}

ModeOperator build_mode_operator(double xi_x, double xi_y, const Grid& grid) {
  ModeOperator op;
  op.xi_x = xi_x;
  op.xi_y = xi_y;
  op.xi_squared = xi_x * xi_x + xi_y * xi_y;
  op.coupled = op.xi_squared != 0.0;
  const int kk = grid.k();
  op.diagonal.resize(kk);
  for (int k = 0; k < kk; ++k) op.diagonal(k) = -(op.xi_squared + grid.lambda(k) * grid.lambda(k));
  op.coupling = MatrixXd::Zero(kk, kk);
  if (op.coupled) {
    const ProjectionTables tables(grid);
    for (int k = 0; k < kk; ++k)
      for (int j = 0; j < kk; ++j) op.coupling(k, j) = tables.beta_tilde[k] / grid.h() * grid.lambda(j);
  }
  return op;
}

ModeOperator build_mode_operator(const Grid& grid, int mi, int ni) {
  ModeOperator op = build_mode_operator(grid.wavenumber(mi), grid.wavenumber(ni), grid);
  const double true_xi2 = grid.xi_squared(mi, ni);
  if (true_xi2 != op.xi_squared) {
    op.xi_squared = true_xi2;
    for (int k = 0; k < grid.k(); ++k) op.diagonal(k) = -(true_xi2 + grid.lambda(k) * grid.lambda(k));
  }
  return op;
}

std::size_t SemigroupCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::size_t SemigroupCache::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

std::size_t SemigroupCache::size() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

StokesOperator::StokesOperator(Grid grid, std::size_t cache_capacity)
    : grid_(std::move(grid)), cache_(std::make_unique<SemigroupCache>(std::max<std::size_t>(cache_capacity, 1))) {}

SpectralField StokesOperator::apply(const SpectralField& v) const {
  require(v.grid() == grid_, "apply: grid mismatch");
  return map_modes(
      v,
      [](const ModeOperator& op, VectorXcd& par, VectorXcd& perp) {
        par = real_times(op.parallel_block(), par);
        perp = op.diagonal.cwiseProduct(perp.real()).cast<Complex>() +
               Complex(0, 1) * op.diagonal.cwiseProduct(perp.imag()).cast<Complex>();
      },
      [](const ModeOperator& op, const VectorXcd& c) -> VectorXcd {
        return op.diagonal.cast<Complex>().cwiseProduct(c);
      });
}

SpectralField StokesOperator::semigroup(double t, const SpectralField& v) const {
  require(t >= 0.0, "semigroup: t must be nonnegative");
  require(v.grid() == grid_, "semigroup: grid mismatch");
  if (t == 0.0) return v;
  auto propagator = [&](const ModeOperator& op) {
    const SemigroupCache::Key key{kExp, bits(op.xi_squared), op.coupled, bits(t)};
    return cache_->get(key, [&] {
      SemigroupCache::Entry e;
      e.diagonal = (t * op.diagonal).array().exp().matrix();
      if (op.coupled) {
        e.dense = true;
        e.parallel = expm(t * op.parallel_block());
      }
      return e;
    });
  };
  return map_modes(
      v,
      [&](const ModeOperator& op, VectorXcd& par, VectorXcd& perp) {
        const auto e = propagator(op);
        par = real_times(e->parallel, par);
        perp = e->diagonal.cast<Complex>().cwiseProduct(perp);
      },
      [&](const ModeOperator& op, const VectorXcd& c) -> VectorXcd {
        return propagator(op)->diagonal.cast<Complex>().cwiseProduct(c);
      });
}

SpectralField StokesOperator::phi1(double t, const SpectralField& g) const {
  require(t > 0.0, "phi1: t must be positive");
  require(g.grid() == grid_, "phi1: grid mismatch");
  auto propagator = [&](const ModeOperator& op) {
    const SemigroupCache::Key key{kPhi1, bits(op.xi_squared), op.coupled, bits(t)};
    return cache_->get(key, [&] {
      SemigroupCache::Entry e;
      e.diagonal.resize(op.diagonal.size());
      for (Eigen::Index k = 0; k < op.diagonal.size(); ++k) {
        const double x = t * op.diagonal(k);
        e.diagonal(k) = x == 0.0 ? 1.0 : std::expm1(x) / x;
      }
      if (op.coupled) {
        e.dense = true;
        e.parallel = hydrostokes::phi1(op.parallel_block(), t);
      }
      return e;
    });
  };
  return map_modes(
      g,
      [&](const ModeOperator& op, VectorXcd& par, VectorXcd& perp) {
        const auto e = propagator(op);
        par = real_times(e->parallel, par);
        perp = e->diagonal.cast<Complex>().cwiseProduct(perp);
      },
      [&](const ModeOperator& op, const VectorXcd& c) -> VectorXcd {
        return propagator(op)->diagonal.cast<Complex>().cwiseProduct(c);
      });
}

const std::vector<Complex>& StokesOperator::parallel_eigenvalues(const ModeOperator& op) const {
  const std::pair<std::uint64_t, bool> key{bits(op.xi_squared), op.coupled};
  std::lock_guard lock(eig_mutex_);
  auto it = eig_table_.find(key);
  if (it != eig_table_.end()) return it->second;
  std::vector<Complex> values;
  if (op.coupled) {
    Eigen::EigenSolver<MatrixXd> solver(op.parallel_block(), false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) values.push_back(solver.eigenvalues()(i));
  } else {
    for (Eigen::Index i = 0; i < op.diagonal.size(); ++i) values.emplace_back(op.diagonal(i), 0.0);
  }
  return eig_table_.emplace(key, std::move(values)).first->second;
}

namespace {

void check_distance(Complex lambda, const std::vector<Complex>& spectrum) {
  for (const auto& mu : spectrum) {
    if (std::abs(lambda - mu) <= kSingularityTolerance * std::max(1.0, std::abs(mu))) {
      throw SingularityError("resolvent: lambda = (" + std::to_string(lambda.real()) + ", " +
                             std::to_string(lambda.imag()) + ") lies on the spectrum");
    }
  }
}

VectorXcd diagonal_solve(Complex lambda, const VectorXd& diag, const VectorXcd& f) {
  VectorXcd out(f.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    const Complex denom = lambda - diag(k);
    if (std::abs(denom) <= kSingularityTolerance * std::max(1.0, std::abs(diag(k))))
      throw SingularityError("resolvent: lambda lies on the spectrum");
    out(k) = f(k) / denom;
  }
  return out;
}

}  // namespace

SpectralField StokesOperator::resolvent(Complex lambda, const SpectralField& f) const {
  require(f.grid() == grid_, "resolvent: grid mismatch");
  // The operator is undefined on its spectrum whatever the datum, so every
  // mode is checked, not only the ones f occupies.
  for (int mi = 0; mi < grid_.n(); ++mi)
    for (int ni = 0; ni < grid_.n(); ++ni) {
      const ModeOperator op = build_mode_operator(grid_, mi, ni);
      check_distance(lambda, parallel_eigenvalues(op));
      std::vector<Complex> diag(op.diagonal.data(), op.diagonal.data() + op.diagonal.size());
      check_distance(lambda, diag);
    }
  return map_modes(
      f,
      [&](const ModeOperator& op, VectorXcd& par, VectorXcd& perp) {
        const Eigen::MatrixXcd system =
            lambda * Eigen::MatrixXcd::Identity(op.diagonal.size(), op.diagonal.size()) -
            op.parallel_block().cast<Complex>();
        const VectorXcd rhs = par;
        par = system.partialPivLu().solve(rhs);
        const double scale = std::max(rhs.norm(), std::numeric_limits<double>::min());
        if ((system * par - rhs).norm() > kResidualTolerance * scale)
          throw SingularityError("resolvent: residual check failed (ill-conditioned mode block)");
        perp = diagonal_solve(lambda, op.diagonal, perp);
      },
      [&](const ModeOperator& op, const VectorXcd& c) -> VectorXcd {
        return diagonal_solve(lambda, op.diagonal, c);
      });
}

SpectralField StokesOperator::laplace_resolvent(Complex lambda, const SpectralField& f) const {
  require(f.grid() == grid_, "laplace resolvent: grid mismatch");
  for (int mi = 0; mi < grid_.n(); ++mi)
    for (int ni = 0; ni < grid_.n(); ++ni)
      for (int k = 0; k < grid_.k(); ++k) {
        const double mu = -(grid_.xi_squared(mi, ni) + grid_.lambda(k) * grid_.lambda(k));
        if (std::abs(lambda - mu) <= kSingularityTolerance * std::max(1.0, std::abs(mu)))
          throw SingularityError("laplace resolvent: lambda lies on the spectrum");
      }
  SpectralField out(grid_, f.ncomp());
  for (int c = 0; c < f.ncomp(); ++c)
    for (int mi = 0; mi < grid_.n(); ++mi)
      for (int ni = 0; ni < grid_.n(); ++ni) {
        const double xi2 = grid_.xi_squared(mi, ni);
        auto src = f.column(c, mi, ni);
        auto dst = out.column(c, mi, ni);
        for (int k = 0; k < grid_.k(); ++k) {
          const double mu = -(xi2 + grid_.lambda(k) * grid_.lambda(k));
          const Complex denom = lambda - mu;
          if (std::abs(denom) <= kSingularityTolerance * std::max(1.0, std::abs(mu)))
            throw SingularityError("laplace resolvent: lambda lies on the spectrum");
          dst[k] = src[k] / denom;
        }
      }
  return out;
}

SpectralBoundReport StokesOperator::spectral_bound(Subspace subspace) const {
  SpectralBoundReport report;
  report.subspace = subspace;
  report.bound = -std::numeric_limits<double>::infinity();
  // The solenoidal constraint on the parallel coefficients is w . c = 0 with
  // w_k = 1/lambda_k; its null space is spanned by the trailing Householder columns.
  const int kk = grid_.k();
  VectorXd w(kk);
  for (int k = 0; k < kk; ++k) w(k) = 1.0 / grid_.lambda(k);
  const MatrixXd q = Eigen::HouseholderQR<MatrixXd>(w).householderQ() * MatrixXd::Identity(kk, kk);
  const MatrixXd null_basis = q.rightCols(kk - 1);
  std::map<std::pair<std::uint64_t, bool>, std::vector<Complex>> solenoidal_cache;

  for (int mi = 0; mi < grid_.n(); ++mi)
    for (int ni = 0; ni < grid_.n(); ++ni) {
      const ModeOperator op = build_mode_operator(grid_, mi, ni);
      ModeSpectrum ms;
      ms.m = grid_.signed_index(mi);
      ms.n = grid_.signed_index(ni);
      for (Eigen::Index k = 0; k < op.diagonal.size(); ++k) ms.eigenvalues.emplace_back(op.diagonal(k), 0.0);
      if (!op.coupled) {
        for (Eigen::Index k = 0; k < op.diagonal.size(); ++k) ms.eigenvalues.emplace_back(op.diagonal(k), 0.0);
      } else if (subspace == Subspace::full) {
        const auto& par = parallel_eigenvalues(op);
        ms.eigenvalues.insert(ms.eigenvalues.end(), par.begin(), par.end());
      } else if (kk > 1) {
        const std::pair<std::uint64_t, bool> key{bits(op.xi_squared), op.coupled};
        auto it = solenoidal_cache.find(key);
        if (it == solenoidal_cache.end()) {
          const MatrixXd restricted = null_basis.transpose() * op.parallel_block() * null_basis;
          Eigen::EigenSolver<MatrixXd> solver(restricted, false);
          std::vector<Complex> vals;
          for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) vals.push_back(solver.eigenvalues()(i));
          it = solenoidal_cache.emplace(key, std::move(vals)).first;
        }
        ms.eigenvalues.insert(ms.eigenvalues.end(), it->second.begin(), it->second.end());
      }
      for (const auto& ev : ms.eigenvalues) report.bound = std::max(report.bound, ev.real());
      report.modes.push_back(std::move(ms));
    }
  return report;
}

}  // namespace hydrostokes
