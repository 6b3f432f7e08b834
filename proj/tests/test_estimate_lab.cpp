#include <gtest/gtest.h>

#include <random>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/estimate_lab.hpp"
#include "hydrostokes/generators.hpp"
#include "hydrostokes/norms.hpp"
#include "hydrostokes/stokes.hpp"
#include "support.hpp"

using namespace hydrostokes;
using namespace hydrostokes::testing;

namespace {

double sec2(double x) { return 1.0 / (std::cos(x) * std::cos(x)); }

TorusField torus(int n) { return {n, n, n, std::vector<double>(static_cast<std::size_t>(n) * n * n, 0.0)}; }

double& at(TorusField& f, int i, int j, int l) {
  return f.values[(static_cast<std::size_t>(i) * f.n2 + j) * f.n3 + l];
}

}  // namespace

TEST(ScanReport, FloorExcludesVanishingDenominators) {
  ScanReport r;
  r.add(0, 0.1, 1.0, 2.0);
  r.add(1, 0.2, 1.0, 1e-15);
  r.add(2, 0.3, 0.0, 0.0);
  r.add(3, 0.4, 3.0, 2.0);
  EXPECT_EQ(r.excluded, 2);
  EXPECT_EQ(r.ratio.size(), 2u);
  EXPECT_DOUBLE_EQ(r.sup_ratio, 1.5);
  EXPECT_TRUE(r.ratios_valid());
}

TEST(ScanReport, DriftAndStability) {
  ScanReport r;
  r.add(0, 1.0, 2.0, 1.0);
  EXPECT_THROW(r.drift(), ContractViolation);
  r.refined_sup = 2.1;
  EXPECT_NEAR(r.drift(), 0.05, 1e-12);
  EXPECT_TRUE(r.stable());
  r.refined_sup = 2.5;
  EXPECT_FALSE(r.stable());
}

TEST(ScanReport, CsvLayout) {
  ScanReport r;
  r.id = "demo";
  r.parameter = "t";
  r.resolution = {8, 8};
  r.add(0, 0.5, 1.0, 4.0, 0.25);
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.front(), '#');
  EXPECT_NE(csv.find("sample,t,angle,ratio\n"), std::string::npos);
  EXPECT_NE(csv.find("0,0.5,0.25,0.25"), std::string::npos);
}

TEST(KernelNorm, RealPositiveParameter) {
  const KernelNorm k = kernel_l1_norm(1.0);
  EXPECT_NEAR(k.numeric, 1.0, 1e-10);
  EXPECT_DOUBLE_EQ(k.exact, 1.0);
}

TEST(KernelNorm, ImaginaryParameter) {
  const KernelNorm k = kernel_l1_norm(Complex(0.0, 1.0));
  EXPECT_NEAR(k.numeric, 2.0, 1e-10);
  EXPECT_NEAR(k.exact, 2.0, 1e-14);
}

TEST(KernelNorm, ScalingInvariance) {
  for (double psi : {0.0, 0.3, -1.2, 2.5}) {
    const double a = kernel_l1_norm(std::polar(0.1, psi)).numeric;
    const double b = kernel_l1_norm(std::polar(10.0, psi)).numeric;
    EXPECT_NEAR(a, b, 1e-9 * b);
    EXPECT_NEAR(kernel_l1_norm(std::polar(0.1, psi)).grad_numeric, kernel_l1_norm(std::polar(10.0, psi)).grad_numeric,
                1e-9 * b);
  }
}

TEST(KernelNorm, SectorSweepAndGradientBound) {
  for (double psi : {0.0, kPi / 4, -kPi / 4, kPi / 3, -kPi / 3, 0.45 * kPi, -0.45 * kPi, 0.9 * kPi}) {
    const KernelNorm k = kernel_l1_norm(std::polar(2.0, psi));
    EXPECT_NEAR(k.psi, psi, 1e-15);
    EXPECT_NEAR(k.exact, sec2(psi / 2), 1e-12 * sec2(psi / 2));
    EXPECT_LE(std::abs(k.numeric - k.exact), 1e-6);
    EXPECT_LE(k.grad_numeric, k.grad_bound * (1 + 1e-12));
    EXPECT_NEAR(k.grad_bound, 1 / std::cos(psi / 2) + sec2(psi / 2), 1e-12 * k.grad_bound);
  }
}

TEST(KernelNorm, RejectsOutsideTheSector) {
  EXPECT_THROW(kernel_l1_norm(-1.0), ContractViolation);
  EXPECT_THROW(kernel_l1_norm(0.0), ContractViolation);
}

TEST(Young, DeltaKernelIsTheIdentity) {
  TorusField g = torus(6);
  at(g, 0, 0, 0) = 216.0;  // unit mass with cell weight 1/n^3
  TorusField f = torus(6);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (auto& v : f.values) v = normal(rng);
  const TorusField c = torus_convolution(g, f);
  EXPECT_LE(max_abs_diff(c.values, f.values), 1e-13);
  EXPECT_NEAR(young_ratio(g, f, kInf, 4.0), 1.0, 1e-14);
  const ScanReport r = young_anisotropic_test(10, 2.0, 2.0, 1, YoungSamples::delta);
  for (double x : r.ratio) EXPECT_NEAR(x, 1.0, 1e-14);
}

TEST(Young, BoxKernelOnACosineModeIsItsSymbol) {
  const int n = 8;
  TorusField g = torus(n);
  for (int i : {n - 1, 0, 1})
    for (int j : {n - 1, 0, 1})
      for (int l : {n - 1, 0, 1}) at(g, i, j, l) = double(n * n * n) / 27.0;
  TorusField f = torus(n);
  const int m1 = 1, m2 = 2, m3 = 3;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) at(f, i, j, l) = std::cos(2 * kPi * (m1 * i + m2 * j + m3 * l) / n);
  auto factor = [&](int m) { return (1 + 2 * std::cos(2 * kPi * m / n)) / 3; };
  const double symbol = std::abs(factor(m1) * factor(m2) * factor(m3));
  for (auto [q, p] : {std::pair{kInf, 4.0}, {2.0, 2.0}, {1.0, kInf}}) EXPECT_NEAR(young_ratio(g, f, q, p), symbol, 1e-12);
}

TEST(Young, RandomPairsNeverExceedOne) {
  for (auto [q, p] : {std::pair{kInf, 4.0}, {2.0, 2.0}, {1.0, kInf}, {3.0, 1.5}}) {
    for (YoungSamples kind : {YoungSamples::random_nonnegative, YoungSamples::random_signed, YoungSamples::box_mode}) {
      const ScanReport r = young_anisotropic_test(20, q, p, 7, kind, 6);
      EXPECT_EQ(r.ratio.size(), 20u);
      EXPECT_LE(r.sup_ratio, 1.0 + 1e-10);
      EXPECT_TRUE(r.ratios_valid());
    }
  }
}

TEST(Young, MixedNormOfASeparableField) {
  // f(x, y, z) = a(x) b(z): the mixed norm factors into one-dimensional norms.
  TorusField f{4, 4, 4, std::vector<double>(64)};
  const double a[4] = {1, -2, 0.5, 3}, b[4] = {2, 1, -1, 0.25};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) at(f, i, j, l) = a[i] * b[l];
  double bl3 = 0.0, al2 = 0.0;
  for (int l = 0; l < 4; ++l) bl3 += std::pow(std::abs(b[l]), 3) / 4;
  for (int i = 0; i < 4; ++i) al2 += a[i] * a[i] / 4;
  EXPECT_NEAR(torus_mixed_norm(f, 2.0, 3.0), std::sqrt(al2) * std::cbrt(bl3), 1e-13);
  EXPECT_NEAR(torus_mixed_norm(f, kInf, kInf), 6.0, 0.0);
}

TEST(SemigroupDecay, PerpendicularModeFollowsTheScalarProfile) {
  // f = (0, cos(2 pi x) phi_0(z)) is an eigenfunction with eigenvalue -mu, so
  // t^{1/2} ||grad e^{tA} f|| = t^{1/2} e^{-mu t} ||grad f||.
  const Grid g(8, 8, 1.0);
  const StokesOperator op(g);
  SpectralField f(g, 2);
  f(1, 1, 0, 0) = f(1, 7, 0, 0) = 0.5;
  const double mu = 4 * kPi * kPi + kPi * kPi / 4;
  const double base = gradient_mixed_norm(f, kInf, 4.0);
  for (double t : {1e-3, 1.0 / (2 * mu), 0.1}) {
    const double got = std::sqrt(t) * gradient_mixed_norm(op.semigroup(t, f), kInf, 4.0);
    EXPECT_NEAR(got, std::sqrt(t) * std::exp(-mu * t) * base, 1e-12 * base);
  }
  const std::vector<double> trend = small_time_gradient_trend(g, f, {1.0 / (8 * mu), 1.0 / (2 * mu), 2.0 / mu}, 4.0);
  EXPECT_GT(trend[1], trend[0]);
  EXPECT_GT(trend[1], trend[2]);
  EXPECT_NEAR(trend[1], base / std::sqrt(2 * mu) * std::exp(-0.5), 1e-12 * base);
}

TEST(SemigroupDecay, SmallTimeTrendDecreasesForSmoothData) {
  const Grid g(16, 16, 1.0);
  RandomFieldOptions o;
  o.decay = 3.0;
  o.max_h = 3;
  o.max_k = 6;
  const SpectralField f = random_field(g, 4, o);
  std::vector<double> times;
  for (int i = 0; i < 10; ++i) times.push_back(1e-3 * std::pow(0.5, i));
  const std::vector<double> trend = small_time_gradient_trend(g, f, times, 4.0);
  for (std::size_t i = 1; i < trend.size(); ++i) EXPECT_LT(trend[i], trend[i - 1]);
  EXPECT_LT(trend.back(), 0.1 * trend.front());
}

TEST(SemigroupDecay, ScanIsDeterministicAndFinite) {
  const Grid g(8, 8, 1.0);
  for (DecayCombo combo : {DecayCombo::grad_semigroup, DecayCombo::grad_semigroup_projected,
                           DecayCombo::dz_semigroup_projected, DecayCombo::semigroup_projected_derivative,
                           DecayCombo::grad_semigroup_projected_derivative}) {
    DecayScanOptions o;
    o.combo = combo;
    o.direction = Direction3::z;
    o.times = {1e-3, 1e-2, 1e-1};
    o.samples = 2;
    o.refine = false;
    const ScanReport a = semigroup_decay_scan(g, o);
    const ScanReport b = semigroup_decay_scan(g, o);
    EXPECT_EQ(a.to_csv(), b.to_csv());
    EXPECT_EQ(a.ratio.size(), 6u);
    EXPECT_TRUE(a.ratios_valid());
    EXPECT_GT(a.sup_ratio, 0.0);
    EXPECT_FALSE(a.refined_sup.has_value());
  }
}

TEST(SemigroupDecay, RefinementIsRecorded) {
  DecayScanOptions o;
  o.times = {1e-2, 1e-1};
  o.samples = 2;
  const ScanReport r = semigroup_decay_scan(Grid(8, 8, 1.0), o);
  ASSERT_TRUE(r.refined_sup.has_value());
  EXPECT_EQ(r.resolution, (std::pair{8, 8}));
  EXPECT_EQ(*r.refined_resolution, (std::pair{16, 16}));
}

TEST(Resolvent, LargeRealParameterRatioIsBounded) {
  ResolventScanOptions o;
  o.magnitudes = {1e2, 1e3, 1e4};
  o.angles = 1;
  o.samples = 2;
  o.refine = false;
  for (ResolventKind kind : {ResolventKind::stokes, ResolventKind::laplace}) {
    o.kind = kind;
    const ScanReport r = resolvent_scan(Grid(8, 8, 1.0), o);
    EXPECT_EQ(r.ratio.size(), 6u);
    EXPECT_TRUE(r.ratios_valid());
    for (double a : r.angle) EXPECT_EQ(a, 0.0);
    EXPECT_LT(r.sup_ratio, 10.0);
  }
}

TEST(Resolvent, ScalarModeClosedForm) {
  // For a perpendicular eigenfunction the resolvent is division by lambda + mu.
  const Grid g(8, 8, 1.0);
  const StokesOperator op(g);
  SpectralField f(g, 2);
  f(1, 1, 0, 0) = f(1, 7, 0, 0) = 0.5;
  const double mu = 4 * kPi * kPi + kPi * kPi / 4;
  for (Complex lambda : {Complex(10, 0), Complex(-5, 40), Complex(0, -200)}) {
    const SpectralField v = op.resolvent(lambda, f);
    EXPECT_NEAR(std::abs(v(1, 1, 0, 0) - 0.5 / (lambda + mu)), 0.0, 1e-15);
  }
}

TEST(Multiplier, ScanIsFiniteAndQGrowthIsReported) {
  MultiplierScanOptions o;
  o.n = 16;
  o.magnitudes = {1e-3, 1e-2, 1e-1};
  o.angles = 3;
  o.samples = 2;
  const ScanReport r = horizontal_multiplier_scan(o);
  EXPECT_TRUE(r.ratios_valid());
  EXPECT_EQ(r.ratio.size(), 18u);
  ASSERT_TRUE(r.refined_sup.has_value());
  const std::vector<double> growth = projection_linf_growth({16, 64, 256});
  EXPECT_GT(growth[1], growth[0]);
  EXPECT_GT(growth[2], growth[1]);
}

TEST(Interpolation, HorizontallyConstantFieldHasTheAreaRatio) {
  const Grid g(32, 8, 1.0);
  SpectralField v(g, 2);
  v(0, 0, 0, 0) = 1.0;
  v(1, 0, 0, 1) = 0.3;
  for (double r : {0.1, 0.25}) {
    int count = 0;
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j) {
        auto gap = [](double a, double b) { const double d = std::abs(a - b); return std::min(d, 1 - d); };
        const double dx = gap(i / 32.0, 0.3), dy = gap(j / 32.0, 0.6);
        count += dx * dx + dy * dy <= r * r;
      }
    const double expected = std::pow(r * r * 1024.0 / count, 1.0 / 4.0);
    EXPECT_NEAR(interpolation_ratio_single(v, 0.3, 0.6, r, 4.0, 2.0), expected, 1e-12);
  }
}

TEST(Interpolation, ZeroFieldIsExcluded) {
  const Grid g(8, 4, 1.0);
  EXPECT_TRUE(std::isnan(interpolation_ratio_single(SpectralField(g, 2), 0.5, 0.5, 0.2, 4.0, 2.0)));
}

TEST(Interpolation, ScanIsFinite) {
  LocalScanOptions o;
  o.radii = {0.05, 0.1, 0.2};
  o.samples = 2;
  o.centers = 2;
  const ScanReport r = interpolation_ratio(Grid(16, 8, 1.0), o);
  EXPECT_EQ(r.ratio.size(), 12u);
  EXPECT_TRUE(r.ratios_valid());
  EXPECT_THROW(interpolation_ratio(Grid(16, 8, 1.0), [&] { auto p = o; p.p = 2.0; return p; }()), ContractViolation);
}

TEST(LogRiesz, ScanIsFinite) {
  LocalScanOptions o;
  o.radii = {0.05, 0.1, 0.2};
  o.samples = 2;
  o.centers = 2;
  const ScanReport r = log_riesz_ratio(32, o);
  EXPECT_EQ(r.ratio.size(), 12u);
  EXPECT_TRUE(r.ratios_valid());
  EXPECT_GT(r.sup_ratio, 0.0);
}

TEST(NonlinearEstimates, FourFiniteReports) {
  NonlinearScanOptions o;
  o.times = {1e-2, 1e-1};
  o.samples = 2;
  o.refine = false;
  const std::vector<ScanReport> rs = nonlinear_estimate_scan(Grid(8, 8, 1.0), o);
  ASSERT_EQ(rs.size(), 4u);
  for (const auto& r : rs) {
    EXPECT_EQ(r.ratio.size(), 4u);
    EXPECT_TRUE(r.ratios_valid());
    EXPECT_GT(r.sup_ratio, 0.0);
  }
}

TEST(Recursion, BelowThresholdStaysBounded) {
  const RecursionCheck r = recursion_bound_check(0.1, 1.0, 0.25, 50);
  EXPECT_TRUE(r.ok);
  EXPECT_NEAR(r.bound, 0.2 / 0.75, 1e-15);
  for (double a : r.sequence) EXPECT_LT(a, 0.26667);
  // Direct iteration oracle.
  double a = 0.1;
  for (int m = 0; m < 50; ++m) a = 0.1 + a * a + 0.25 * a;
  EXPECT_DOUBLE_EQ(r.sequence.back(), a);
  const double gap = 0.75;
  EXPECT_NEAR(r.fixed_point, (gap - std::sqrt(gap * gap - 0.4)) / 2.0, 1e-14);
  EXPECT_NEAR(r.sequence.back(), r.fixed_point, 1e-10);
}

TEST(Recursion, ZeroStartStaysZero) {
  const RecursionCheck r = recursion_bound_check(0.0, 1.0, 0.25, 20);
  EXPECT_TRUE(r.ok);
  for (double a : r.sequence) EXPECT_EQ(a, 0.0);
}

TEST(Recursion, ViolatedHypothesisIsRejected) {
  EXPECT_THROW(recursion_bound_check(0.2, 1.0, 0.25, 10), ContractViolation);
  EXPECT_THROW(recursion_bound_check(0.1, 0.0, 0.25, 10), ContractViolation);
  EXPECT_THROW(recursion_bound_check(0.1, 1.0, 1.0, 10), ContractViolation);
  EXPECT_THROW(recursion_bound_check(-0.1, 1.0, 0.25, 10), ContractViolation);
}

TEST(Recursion, NearTheThresholdTheBoundIsTight) {
  // 4 c1 a0 just below (1 - c2)^2: the fixed point approaches (1 - c2) / (2 c1) = bound.
  const double c2 = 0.5, c1 = 1.0;
  const double a0 = (1 - c2) * (1 - c2) / (4 * c1) * (1 - 1e-6);
  const RecursionCheck r = recursion_bound_check(a0, c1, c2, 200);
  EXPECT_TRUE(r.ok);
  EXPECT_GT(r.fixed_point / r.bound, 0.99);
}
