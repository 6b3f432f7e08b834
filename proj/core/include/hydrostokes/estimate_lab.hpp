#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hydrostokes/fields.hpp"
#include "hydrostokes/norms.hpp"

namespace hydrostokes {

/// Ratios of the left side of an estimate to its right side without the
/// unknown constant, sampled over fields and a parameter grid.
struct ScanReport {
  std::string id;
  std::string parameter;             ///< name of the scanned parameter ("t", "lambda", ...)
  std::vector<int> sample;           ///< per row
  std::vector<double> value;         ///< parameter value per row (|lambda| for complex parameters)
  std::vector<double> angle;         ///< argument of a complex parameter, 0 otherwise
  std::vector<double> ratio;         ///< per row
  double sup_ratio = 0.0;
  std::pair<int, int> resolution{0, 0};  ///< (N, K) of the rows
  std::optional<double> refined_sup;     ///< sup on the doubled grid, when measured
  std::optional<std::pair<int, int>> refined_resolution;
  int excluded = 0;                  ///< rows dropped by the denominator floor or a singularity
  std::vector<std::string> notes;

  /// Records num/den, or counts an exclusion when den < 1e-14.
  void add(int sample_index, double param, double numerator, double denominator, double arg = 0.0);
  /// Relative change of the sup under refinement (requires refined_sup).
  double drift() const;
  /// Sup changes by less than 10% under refinement.
  bool stable() const;
  bool ratios_valid() const;  ///< all finite and nonnegative
  std::string to_csv() const;
};

inline constexpr double kDenominatorFloor = 1e-14;

// ---------------------------------------------------------------------------
// Kernel of the resolvent of the Laplacian on R^3

struct KernelNorm {
  double psi = 0.0;        ///< arg(lambda)
  double numeric = 0.0;    ///< |lambda| ||K_lambda||_{L^1} by quadrature
  double exact = 0.0;      ///< sec^2(psi/2)
  double grad_numeric = 0.0;  ///< |lambda|^{1/2} ||grad K_lambda||_{L^1} by quadrature
  double grad_bound = 0.0;    ///< sec(psi/2) + sec^2(psi/2)
};

/// K_lambda(x) = e^{-lambda^{1/2}|x|} / (4 pi |x|). Throws ContractViolation
/// unless lambda != 0 and |arg lambda| < pi.
KernelNorm kernel_l1_norm(std::complex<double> lambda);

// ---------------------------------------------------------------------------
// Young's inequality in mixed norms on a periodic 3-D grid

/// Values on an n1 x n2 x n3 periodic grid of the unit cube, layout [i][j][l].
struct TorusField {
  int n1 = 0, n2 = 0, n3 = 0;
  std::vector<double> values;
};

/// ||f||_{L^q_H L^p_z} with cell weights 1/n per direction.
double torus_mixed_norm(const TorusField& f, double q, double p);
/// Periodic convolution (g * f)(x) = sum_y g(x - y) f(y) / (n1 n2 n3).
TorusField torus_convolution(const TorusField& g, const TorusField& f);
/// ||g * f|| / (||g||_1 ||f||).
double young_ratio(const TorusField& g, const TorusField& f, double q, double p);

enum class YoungSamples { random_nonnegative, random_signed, delta, box_mode };

/// Ratios over `count` seeded samples on an n^3 torus; `box_mode` pairs a
/// normalized box kernel with one Fourier mode, `delta` uses the unit mass.
ScanReport young_anisotropic_test(int count, double q, double p, std::uint64_t seed,
                                  YoungSamples kind = YoungSamples::random_signed, int n = 8);

// ---------------------------------------------------------------------------
// Decay of the hydrostatic Stokes semigroup

enum class DecayCombo {
  grad_semigroup,                  ///< t^{1/2} ||grad e^{tA} f||, f solenoidal
  grad_semigroup_projected,        ///< t^{1/2} ||grad e^{tA} P f||
  dz_semigroup_projected,          ///< t^{1/2} ||d_z e^{tA} P f||
  semigroup_projected_derivative,  ///< t^{1/2} ||e^{tA} P d_j f||
  grad_semigroup_projected_derivative,  ///< t ||grad e^{tA} P d_j f||
};

enum class Direction3 { x, y, z };

struct DecayScanOptions {
  DecayCombo combo = DecayCombo::grad_semigroup;
  Direction3 direction = Direction3::x;  ///< d_j for the derivative combos
  std::vector<double> times;
  int samples = 10;
  std::uint64_t seed = 1;
  double p = 4.0;
  int band = 3;       ///< horizontal degree of the sample fields
  bool refine = true; ///< repeat on (2N, 2K)
};

/// Every ratio is divided by e^{beta t} ||f||_{L^inf_H L^p_z} with beta the
/// solenoidal spectral bound of the grid. Derivative data d_j f come from
/// fields compactly supported in z, for which P d_z f = d_z f.
ScanReport semigroup_decay_scan(const Grid& grid, const DecayScanOptions& options);

/// t^{1/2} ||grad e^{tA} f||_{L^inf_H L^p_z} over the given times.
std::vector<double> small_time_gradient_trend(const Grid& grid, const SpectralField& f,
                                              const std::vector<double>& times, double p);

// ---------------------------------------------------------------------------
// Resolvent estimates on sectors

enum class ResolventKind { stokes, laplace };

struct ResolventScanOptions {
  ResolventKind kind = ResolventKind::stokes;
  double theta = 0.75 * std::numbers::pi;  ///< sector half-angle, < pi
  std::vector<double> magnitudes;           ///< |lambda| values
  int angles = 5;                           ///< rays in [-theta, theta]
  int samples = 5;
  std::uint64_t seed = 1;
  double q = kInf;  ///< horizontal exponent
  double p = 4.0;
  bool derivative_datum = false;  ///< |lambda|^{1/2} ||(lambda - A)^{-1} P d_j f|| / ||f||
  Direction3 direction = Direction3::x;
  int band = 3;
  bool refine = true;
};

/// (|lambda| ||v|| + |lambda|^{1/2} ||grad v|| + ||Delta v||) / ||f|| with
/// v = (lambda - A)^{-1} f (or the Laplacian resolvent). Points too close to
/// the spectrum are skipped and counted.
ScanReport resolvent_scan(const Grid& grid, const ResolventScanOptions& options);

// ---------------------------------------------------------------------------
// Two-dimensional heat multiplier on Q and the unboundedness of Q on L^inf

struct MultiplierScanOptions {
  int n = 32;
  double theta = 0.4 * std::numbers::pi;  ///< sector half-angle for tau, < pi/2
  std::vector<double> magnitudes;          ///< |tau| values
  int angles = 5;
  int samples = 5;
  std::uint64_t seed = 1;
  int band = 4;
  bool refine = true;
};

/// |tau|^{1/2} ||grad_H e^{tau Delta_H} Q f||_{L^inf(G)} / ||f||_{L^inf(G)}.
ScanReport horizontal_multiplier_scan(const MultiplierScanOptions& options);

/// ||Q f||_inf / ||f||_inf for the checkerboard f = (sgn sin 2 pi x sgn sin 2 pi y, 0)
/// sampled at each resolution. Q is unbounded on L^inf, so this grows with the
/// resolution (slowly, through the corner singularities of Q f).
std::vector<double> projection_linf_growth(const std::vector<int>& resolutions);

// ---------------------------------------------------------------------------
// Local interpolation and the logarithmic Riesz estimate

struct LocalScanOptions {
  std::vector<double> radii;
  int centers = 4;
  int samples = 5;
  std::uint64_t seed = 1;
  double p = 4.0;  ///< horizontal exponent (> 2 for the interpolation scan)
  double q = 2.0;  ///< vertical exponent
  int band = 3;
  bool refine = true;
};

/// ||v||_{L^inf(B; L^q_z)} / (r^{-2/p} (||v||_{L^p(B; L^q_z)} + r ||grad_H v||_{L^p(B; L^q_z)}))
/// over random smooth fields, periodic disks B = B(x0, r) and radii.
ScanReport interpolation_ratio(const Grid& grid, const LocalScanOptions& options);

/// The same ratio for one field and one disk, evaluated on its nodes.
double interpolation_ratio_single(const SpectralField& v, double x0, double y0, double r, double p, double q);

/// ||grad_H pi||_{L^p(B)} / (r^{2/p} (1 + |log r|) ||F||_{L^inf(G)}) with
/// Delta_H pi = div_H F on the periodic square of n points.
ScanReport log_riesz_ratio(int n, const LocalScanOptions& options);

// ---------------------------------------------------------------------------
// Bilinear estimates for the nonlinearity

struct NonlinearScanOptions {
  std::vector<double> times;
  int samples = 4;
  std::uint64_t seed = 1;
  double p = 4.0;
  int band = 3;
  bool refine = true;
};

/// Four reports on e^{tA} P (u_1 . grad) v_2 =: E, norms in L^inf_H L^p_z:
///   nonlinear_value        t^{1/2} ||E|| / (||grad v_1|| ||v_2||)
///   nonlinear_gradient     t^{1/2} ||grad E|| / (||grad v_1|| ||grad v_2||)
///   nonlinear_gradient_t   t ||grad E|| / (||grad v_1|| ||v_2||)
///   nonlinear_value_split  ||E|| / (t^{-1/2} ||v_1|| ||grad v_2|| + ||grad v_1|| ||grad v_2||)
std::vector<ScanReport> nonlinear_estimate_scan(const Grid& grid, const NonlinearScanOptions& options);

// ---------------------------------------------------------------------------
// Quadratic recursion bound

struct RecursionCheck {
  std::vector<double> sequence;  ///< a_0 .. a_M of a_{m+1} = a_0 + c1 a_m^2 + c2 a_m
  double bound = 0.0;            ///< 2 a_0 / (1 - c2)
  double fixed_point = 0.0;      ///< smallest root of x = a_0 + c1 x^2 + c2 x
  bool ok = false;               ///< every a_m < bound (+1e-12)
};

/// Throws ContractViolation unless c1 > 0, 0 < c2 < 1, a0 >= 0 and 4 c1 a0 < (1 - c2)^2.
RecursionCheck recursion_bound_check(double a0, double c1, double c2, int steps);

}  // namespace hydrostokes
