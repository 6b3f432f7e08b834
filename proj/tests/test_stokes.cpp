#include <gtest/gtest.h>

#include <boost/numeric/odeint.hpp>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/generators.hpp"
#include "hydrostokes/norms.hpp"
#include "hydrostokes/projection.hpp"
#include "hydrostokes/stokes.hpp"
#include "support.hpp"

using namespace hydrostokes;
using namespace hydrostokes::testing;
namespace odeint = boost::numeric::odeint;

namespace {

// Parallel block assembled from the closed forms: diagonal -(|xi|^2 + lambda_k^2)
// plus R_kj = 2 lambda_j / (h^2 lambda_k sigma_K).
Eigen::MatrixXd hand_parallel_block(double xi2, int kk, double h) {
  std::vector<double> lam(kk);
  double sigma = 0.0;
  for (int k = 0; k < kk; ++k) {
    lam[k] = (2 * k + 1) * kPi / (2 * h);
    sigma += 2.0 / (h * h * lam[k] * lam[k]);
  }
  Eigen::MatrixXd m(kk, kk);
  for (int k = 0; k < kk; ++k)
    for (int j = 0; j < kk; ++j)
      m(k, j) = (xi2 > 0 ? 2.0 * lam[j] / (h * h * lam[k] * sigma) : 0.0) - (k == j ? xi2 + lam[k] * lam[k] : 0.0);
  return m;
}

// Integrates dc/dt = M c + f from c0 to t with a tight adaptive Dormand-Prince.
std::vector<double> integrate(const Eigen::MatrixXd& m, std::vector<double> c, const std::vector<double>& f, double t) {
  auto rhs = [&](const std::vector<double>& x, std::vector<double>& dx, double) {
    dx.assign(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) dx[i] += m(i, j) * x[j];
      dx[i] += f[i];
    }
  };
  odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<std::vector<double>>>(1e-14, 1e-14),
                             rhs, c, 0.0, t, 1e-5);
  return c;
}

// A field populated only in mode (1,1) and its conjugate, with real parallel
// coefficients c (along xi_hat = (1,1)/sqrt 2).
SpectralField parallel_mode_field(const Grid& g, const std::vector<double>& c) {
  SpectralField v(g, 2);
  const int n = g.n();
  for (int k = 0; k < g.k(); ++k) {
    v(0, 1, 1, k) = v(1, 1, 1, k) = c[k] / std::sqrt(2.0);
    v(0, n - 1, n - 1, k) = v(1, n - 1, n - 1, k) = c[k] / std::sqrt(2.0);
  }
  return v;
}

std::vector<double> parallel_coefficients(const SpectralField& v) {
  std::vector<double> out;
  for (int k = 0; k < v.grid().k(); ++k) {
    const Complex par = (v(0, 1, 1, k) + v(1, 1, 1, k)) / std::sqrt(2.0);
    EXPECT_NEAR(par.imag(), 0.0, 1e-14);
    out.push_back(par.real());
  }
  return out;
}

std::vector<double> random_vector(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(k);
  for (auto& x : c) x = normal(rng);
  return c;
}

}  // namespace

TEST(ModeOperator, ZeroWavenumberSingleMode) {
  const Grid g(4, 1, 1.0);
  const ModeOperator op = build_mode_operator(0.0, 0.0, g);
  EXPECT_FALSE(op.coupled);
  EXPECT_NEAR(op.parallel_block()(0, 0), -kPi * kPi / 4, 1e-15);
}

TEST(ModeOperator, HandComputedCoupledBlock) {
  const Grid g(4, 1, 1.0);
  const ModeOperator op = build_mode_operator(2 * kPi, 0.0, g);
  // sigma_1 = 8/pi^2 and R_00 = 2/sigma_1 = pi^2/4 cancels the vertical eigenvalue.
  EXPECT_NEAR(op.coupling(0, 0), kPi * kPi / 4, 1e-14);
  EXPECT_NEAR(op.parallel_block()(0, 0), -4 * kPi * kPi, 1e-12);
}

TEST(ModeOperator, CouplingIsTheOuterProduct) {
  for (double h : {0.5, 1.0, 2.5}) {
    const Grid g(8, 9, h);
    const ModeOperator op = build_mode_operator(2 * kPi, -4 * kPi, g);
    const Eigen::MatrixXd ref = hand_parallel_block(op.xi_squared, 9, h);
    EXPECT_LE((op.parallel_block() - ref).cwiseAbs().maxCoeff(), 1e-12 * ref.cwiseAbs().maxCoeff());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op.coupling);
    EXPECT_LE(svd.singularValues()(1), 1e-12 * svd.singularValues()(0));
  }
}

TEST(ModeOperator, SolenoidalSubspaceIsInvariant) {
  const Grid g(8, 10, 1.3);
  const ModeOperator op = build_mode_operator(2 * kPi, 2 * kPi, g);
  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(random_vector(10, 4).data(), 10);
  Eigen::VectorXd w(10);
  for (int k = 0; k < 10; ++k) w(k) = 1.0 / g.lambda(k);
  c -= w.dot(c) / w.squaredNorm() * w;
  EXPECT_NEAR(w.dot(op.parallel_block() * c), 0.0, 1e-12 * c.norm());
}

TEST(StokesOperator, PerpendicularModeIsDiagonal) {
  const Grid g(8, 6, 1.0);
  const StokesOperator op(g);
  SpectralField v(g, 2);
  v(1, 1, 0, 3) = Complex(0, -0.5);
  v(1, 7, 0, 3) = Complex(0, 0.5);
  const SpectralField av = op.apply(v);
  const double mu = 4 * kPi * kPi + g.lambda(3) * g.lambda(3);
  EXPECT_LE(coeff_distance(av, -mu * v), 1e-12 * mu);
}

TEST(StokesOperator, ZeroModeIsVerticalHeat) {
  const Grid g(8, 6, 2.0);
  const StokesOperator op(g);
  SpectralField v(g, 2);
  for (int k = 0; k < 6; ++k) v(0, 0, 0, k) = 1.0 + k, v(1, 0, 0, k) = -k;
  const SpectralField av = op.apply(v);
  for (int c = 0; c < 2; ++c)
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(av(c, 0, 0, k) + g.lambda(k) * g.lambda(k) * v(c, 0, 0, k)), 0.0, 1e-12);
}

TEST(StokesOperator, ApplyMatchesLaplacianPlusBottomCoupling) {
  const Grid g(12, 10, 1.4);
  const StokesOperator op(g);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SpectralField v = dense_field(g, 2, 40 + s);
    // B v = (1/h) (1 - Q) d_z v|_{z=-h}, extended as a z-constant.
    PlanarField shear(g.n(), 2);
    for (int c = 0; c < 2; ++c)
      for (int mi = 0; mi < g.n(); ++mi)
        for (int ni = 0; ni < g.n(); ++ni) {
          Complex acc = 0.0;
          for (int k = 0; k < g.k(); ++k) acc += g.lambda(k) * v(c, mi, ni, k);
          shear(c, mi, ni) = acc / g.h();
        }
    const PlanarField q = helmholtz_2d(shear);
    for (std::size_t i = 0; i < shear.data().size(); ++i) shear.data()[i] -= q.data()[i];
    const SpectralField ref = laplacian(v) + extend_constant_in_z(shear, g);
    EXPECT_LE(coeff_distance(op.apply(v), ref), 1e-12 * ref.max_abs());
  }
}

TEST(Semigroup, IdentityAtZeroAndRejectsNegativeTime) {
  const Grid g(8, 4, 1.0);
  const StokesOperator op(g);
  const SpectralField v = dense_field(g, 2, 1);
  EXPECT_EQ(coeff_distance(op.semigroup(0.0, v), v), 0.0);
  EXPECT_THROW(op.semigroup(-1e-3, v), ContractViolation);
  EXPECT_THROW(op.phi1(0.0, v), ContractViolation);
}

TEST(Semigroup, ZeroModeDecaysByVerticalEigenvalue) {
  const Grid g(8, 5, 1.0);
  const StokesOperator op(g);
  SpectralField v(g, 2);
  v(0, 0, 0, 2) = 1.0;
  const SpectralField e = op.semigroup(0.37, v);
  EXPECT_NEAR(e(0, 0, 0, 2).real(), std::exp(-g.lambda(2) * g.lambda(2) * 0.37), 1e-15);
}

TEST(Semigroup, MatchesAdaptiveOdeIntegration) {
  const Grid g(8, 8, 1.0);
  const StokesOperator op(g);
  const std::vector<double> c0 = random_vector(8, 21);
  const Eigen::MatrixXd m = hand_parallel_block(8 * kPi * kPi, 8, 1.0);
  const std::vector<double> ref = integrate(m, c0, std::vector<double>(8, 0.0), 0.1);
  const std::vector<double> got = parallel_coefficients(op.semigroup(0.1, parallel_mode_field(g, c0)));
  EXPECT_LE(max_abs_diff(got, ref), 1e-8 * max_abs(c0));
}

TEST(Semigroup, Phi1SolvesTheForcedProblem) {
  const Grid g(8, 8, 1.0);
  const StokesOperator op(g);
  const std::vector<double> c0 = random_vector(8, 22);
  const std::vector<double> f = random_vector(8, 23);
  const double t = 0.05;
  const Eigen::MatrixXd m = hand_parallel_block(8 * kPi * kPi, 8, 1.0);
  const std::vector<double> ref = integrate(m, c0, f, t);
  const SpectralField v = op.semigroup(t, parallel_mode_field(g, c0)) + t * op.phi1(t, parallel_mode_field(g, f));
  EXPECT_LE(max_abs_diff(parallel_coefficients(v), ref), 1e-9 * max_abs(ref));
}

TEST(Semigroup, Phi1SmallTimeLimit) {
  const Grid g(8, 6, 1.0);
  const StokesOperator op(g);
  const SpectralField v = dense_field(g, 2, 5);
  const double t = 1e-6;
  EXPECT_LE(l2_norm(op.phi1(t, v) - v), t * l2_norm(op.apply(v)));
}

TEST(Semigroup, SemigroupLaw) {
  const Grid g(8, 8, 1.0);
  const StokesOperator op(g);
  const SpectralField v = dense_field(g, 2, 6);
  const double norm = l2_norm(v);
  for (double s : {0.01, 0.1, 1.0})
    for (double t : {0.01, 0.1, 1.0})
      EXPECT_LE(l2_norm(op.semigroup(s + t, v) - op.semigroup(s, op.semigroup(t, v))), 1e-10 * norm);
}

TEST(Semigroup, GeneratorConsistency) {
  const Grid g(8, 6, 1.0);
  const StokesOperator op(g);
  const SpectralField v = dense_field(g, 2, 7);
  const SpectralField av = op.apply(v);
  std::vector<double> errs;
  for (double tau : {1e-4, 5e-5, 2.5e-5}) {
    SpectralField diff = op.semigroup(tau, v) - v;
    diff *= 1.0 / tau;
    errs.push_back(l2_norm(diff - av));
  }
  EXPECT_GE(std::log2(errs[0] / errs[1]), 0.9);
  EXPECT_GE(std::log2(errs[1] / errs[2]), 0.9);
}

TEST(Semigroup, SolenoidalInputStaysSolenoidal) {
  const Grid g(16, 12, 1.0);
  const StokesOperator op(g);
  const SpectralField v = project_hydrostatic(dense_field(g, 2, 8));
  for (double t : {1e-3, 0.1, 1.0}) EXPECT_LE(check_solenoidal(op.semigroup(t, v)) * l2_norm(v), 1e-12 * l2_norm(v));
}

TEST(Semigroup, CommutesWithHorizontalDerivatives) {
  const Grid g(8, 6, 1.0);
  const StokesOperator op(g);
  const SpectralField v = dense_field(g, 2, 9);
  for (Axis a : {Axis::x, Axis::y}) {
    const SpectralField lhs = horizontal_derivative(op.semigroup(0.05, v), a);
    const SpectralField rhs = op.semigroup(0.05, horizontal_derivative(v, a));
    EXPECT_LE(coeff_distance(lhs, rhs), 1e-13 * lhs.max_abs());
  }
}

TEST(Semigroup, CacheIsReusedAndDeterministic) {
  const Grid g(8, 6, 1.0);
  const StokesOperator op(g);
  const SpectralField v = dense_field(g, 2, 10);
  const SpectralField a = op.semigroup(0.02, v);
  const std::size_t misses = op.cache().misses();
  const SpectralField b = op.semigroup(0.02, v);
  EXPECT_EQ(op.cache().misses(), misses);
  EXPECT_GT(op.cache().hits(), 0u);
  EXPECT_EQ(coeff_distance(a, b), 0.0);
  const StokesOperator fresh(g, 2);  // tiny cache: eviction must not change values
  EXPECT_EQ(coeff_distance(fresh.semigroup(0.02, v), a), 0.0);
  EXPECT_LE(fresh.cache().size(), 2u);
}

TEST(Resolvent, PerpendicularModeIsScalarDivision) {
  const Grid g(8, 6, 1.0);
  const StokesOperator op(g);
  SpectralField f(g, 2);
  f(1, 1, 0, 2) = Complex(0, -0.5);
  f(1, 7, 0, 2) = Complex(0, 0.5);
  const SpectralField v = op.resolvent(1.0, f);
  const double d = 1.0 + 4 * kPi * kPi + g.lambda(2) * g.lambda(2);
  EXPECT_NEAR(std::abs(v(1, 1, 0, 2) - f(1, 1, 0, 2) / d), 0.0, 1e-16);
}

TEST(Resolvent, ResidualOnRandomData) {
  const Grid g(8, 8, 1.0);
  const StokesOperator op(g);
  const SpectralField f = dense_field(g, 2, 11);
  for (Complex lambda : {Complex(2.0, 0.0), Complex(-10.0, 30.0), Complex(0.0, -100.0)}) {
    const SpectralField v = op.resolvent(lambda, f);
    const SpectralField av = op.apply(v);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(lambda * v.data()[i] - av.data()[i] - f.data()[i]));
    EXPECT_LE(worst, 1e-10 * f.max_abs());
  }
}

TEST(Resolvent, SingularAtTheSpectrum) {
  const Grid g(8, 6, 1.0);
  const StokesOperator op(g);
  SpectralField f(g, 2);
  f(0, 1, 0, 0) = 1.0;  // a mode whose block does not contain the eigenvalue
  f(0, 7, 0, 0) = 1.0;
  EXPECT_THROW(op.resolvent(-kPi * kPi / 4, f), SingularityError);
  EXPECT_THROW(op.laplace_resolvent(-kPi * kPi / 4, f), SingularityError);
}

TEST(Resolvent, LaplaceTransformOfTheSemigroup) {
  const Grid g(4, 4, 1.0);
  const StokesOperator op(g);
  const SpectralField v = dense_field(g, 2, 12);
  for (Complex lambda : {Complex(1.0, 0.0), Complex(0.5, 3.0)}) {
    // Composite Simpson on [0, 15] with exact semigroup stepping.
    const double dt = 5e-4;
    const int steps = 30000;
    std::vector<Complex> acc(v.size(), 0.0);
    SpectralField e = v;
    for (int s = 0; s <= steps; ++s) {
      const double w = (s == 0 || s == steps) ? 1.0 : (s % 2 ? 4.0 : 2.0);
      const Complex weight = w * dt / 3.0 * std::exp(-lambda * (s * dt));
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * e.data()[i];
      e = op.semigroup(dt, e);
    }
    const SpectralField r = op.resolvent(lambda, v);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      worst = std::max(worst, std::abs(acc[i] - r.data()[i]));
      scale = std::max(scale, std::abs(r.data()[i]));
    }
    EXPECT_LE(worst, 1e-4 * scale) << lambda;
  }
}

TEST(LaplaceResolvent, IsDiagonal) {
  const Grid g(8, 4, 1.0);
  const StokesOperator op(g);
  const SpectralField f = dense_field(g, 2, 13);
  const Complex lambda(3.0, 1.0);
  const SpectralField v = op.laplace_resolvent(lambda, f);
  const SpectralField lap = laplacian(v);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, std::abs(lambda * v.data()[i] - lap.data()[i] - f.data()[i]));
  EXPECT_LE(worst, 1e-12 * f.max_abs());
}

TEST(SpectralBound, ZeroModeValueAndOrdering) {
  const Grid g(8, 8, 1.0);
  const StokesOperator op(g);
  const SpectralBoundReport sol = op.spectral_bound(Subspace::solenoidal);
  const SpectralBoundReport full = op.spectral_bound(Subspace::full);
  EXPECT_NEAR(sol.bound, -kPi * kPi / 4, 1e-8);
  EXPECT_GE(full.bound, sol.bound);
  for (const auto& mode : full.modes)
    if (mode.m == 0 && mode.n == 0)
      for (std::size_t k = 0; k < mode.eigenvalues.size(); ++k) EXPECT_LE(mode.eigenvalues[k].real(), -kPi * kPi / 4 + 1e-12);
}

TEST(SpectralBound, NegativeAcrossTheSweep) {
  for (double h : {0.5, 1.0, 2.0})
    for (auto [n, k] : {std::pair{4, 4}, {8, 16}, {16, 8}, {32, 32}, {64, 64}}) {
      const StokesOperator op(Grid(n, k, h));
      const auto r = op.spectral_bound(Subspace::solenoidal);
      EXPECT_LT(r.bound, 0.0) << n << " " << k << " " << h;
      EXPECT_NEAR(r.bound, -std::pow(kPi / (2 * h), 2), 1e-8 * std::pow(kPi / (2 * h), 2));
      for (const auto& mode : r.modes)
        for (const auto& ev : mode.eigenvalues) ASSERT_LT(ev.real(), 0.0);
    }
}
