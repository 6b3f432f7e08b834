#include "hydrostokes/estimate_lab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/generators.hpp"
#include "hydrostokes/nonlinear.hpp"
#include "hydrostokes/projection.hpp"
#include "hydrostokes/stokes.hpp"
#include "hydrostokes/transforms.hpp"

namespace hydrostokes {
namespace {

constexpr double kPi = std::numbers::pi;

Grid doubled(const Grid& g) { return Grid(2 * g.n(), 2 * g.k(), g.h()); }

// Runs `scan` on the grid and, if asked, on the doubled grid.
template <class Scan>
ScanReport with_refinement(const Grid& grid, bool refine, Scan&& scan) {
  ScanReport report = scan(grid);
  report.resolution = {grid.n(), grid.k()};
  if (refine) {
    const Grid fine = doubled(grid);
    const ScanReport r = scan(fine);
    report.refined_sup = r.sup_ratio;
    report.refined_resolution = std::make_pair(fine.n(), fine.k());
    report.excluded += r.excluded;
  }
  return report;
}

std::vector<double> sector_angles(double theta, int count) {
  if (count <= 1) return {0.0};
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(-theta + 2.0 * theta * i / (count - 1));
  return out;
}

SpectralField derivative_along(const SpectralField& f, Direction3 dir) {
  require(dir != Direction3::z, "derivative_along: vertical derivatives come from the sample family");
  return horizontal_derivative(f, dir == Direction3::x ? Axis::x : Axis::y);
}

double vertical_derivative_norm(const SpectralField& c, double p) {
  return norm_anisotropic(vertical_derivative(c), kInf, p);
}

// Real and imaginary parts of a complex field, each a real field:
// Re c(xi) = (c(xi) + conj c(-xi)) / 2, Im c(xi) = (c(xi) - conj c(-xi)) / 2i.
std::pair<SpectralField, SpectralField> real_imag(const SpectralField& c) {
  const Grid& g = c.grid();
  const int n = g.n();
  SpectralField re(g, c.ncomp()), im(g, c.ncomp());
  for (int comp = 0; comp < c.ncomp(); ++comp)
    for (int mi = 0; mi < n; ++mi)
      for (int ni = 0; ni < n; ++ni)
        for (int k = 0; k < g.k(); ++k) {
          const Complex a = c(comp, mi, ni, k);
          const Complex b = std::conj(c(comp, (n - mi) % n, (n - ni) % n, k));
          re(comp, mi, ni, k) = 0.5 * (a + b);
          im(comp, mi, ni, k) = (a - b) / Complex(0.0, 2.0);
        }
  return {std::move(re), std::move(im)};
}

PhysicalField stack(const PhysicalField& a, const PhysicalField& b) {
  PhysicalField out(a.grid(), a.ncomp() + b.ncomp());
  std::copy(a.data().begin(), a.data().end(), out.data().begin());
  std::copy(b.data().begin(), b.data().end(), out.data().begin() + static_cast<std::ptrdiff_t>(a.size()));
  return out;
}

// Mixed norms of complex-valued fields, |v| = (|Re v|^2 + |Im v|^2)^{1/2} pointwise.
double complex_mixed_norm(const SpectralField& c, double q, double p) {
  const auto [re, im] = real_imag(c);
  return norm_anisotropic(stack(inverse_transform(re), inverse_transform(im)), q, p);
}

double complex_gradient_norm(const SpectralField& c, double q, double p) {
  const auto [re, im] = real_imag(c);
  return norm_anisotropic(stack(gradient(re), gradient(im)), q, p);
}

// Real planar node values of every component, layout [c][i*n + j].
std::vector<std::vector<Complex>> node_values(const PlanarField& f) {
  std::vector<std::vector<Complex>> out;
  for (int c = 0; c < f.ncomp(); ++c) out.push_back(planar_values(f, c));
  return out;
}

double planar_sup(const std::vector<std::vector<Complex>>& comps) {
  double best = 0.0;
  for (std::size_t i = 0; i < comps.front().size(); ++i) {
    double acc = 0.0;
    for (const auto& comp : comps) acc += std::norm(comp[i]);
    best = std::max(best, std::sqrt(acc));
  }
  return best;
}

PlanarField random_planar(int n, int band, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  PlanarField f(n, 2);
  for (int m = -band; m <= band; ++m)
    for (int k = -band; k <= band; ++k) {
      if (!(m > 0 || (m == 0 && k > 0))) continue;
      const double sd = std::pow(1.0 + m * m + k * k, -1.0);
      for (int c = 0; c < 2; ++c) {
        const Complex z(normal(rng) * sd, normal(rng) * sd);
        const int mi = (m + n) % n;
        const int ni = (k + n) % n;
        f(c, mi, ni) = z;
        f(c, (n - mi) % n, (n - ni) % n) = std::conj(z);
      }
    }
  return f;
}

// Periodic distance on the unit circle.
double periodic_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

std::vector<double> disk_weights(int n, double x0, double y0, double r) {
  std::vector<double> inside(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double dx = periodic_gap(static_cast<double>(i) / n, x0);
      const double dy = periodic_gap(static_cast<double>(j) / n, y0);
      if (dx * dx + dy * dy <= r * r) inside[static_cast<std::size_t>(i) * n + j] = 1.0;
    }
  return inside;
}

double disk_lp(const std::vector<double>& values, const std::vector<double>& inside, int n, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (inside[i] > 0.0) acc += std::pow(values[i], p);
  return std::pow(acc / (static_cast<double>(n) * n), 1.0 / p);
}

double disk_sup(const std::vector<double>& values, const std::vector<double>& inside) {
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (inside[i] > 0.0) best = std::max(best, values[i]);
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

void ScanReport::add(int sample_index, double param, double numerator, double denominator, double arg) {
  if (!(denominator >= kDenominatorFloor)) {
    ++excluded;
    return;
  }
  const double r = numerator / denominator;
  sample.push_back(sample_index);
  value.push_back(param);
  angle.push_back(arg);
  ratio.push_back(r);
  sup_ratio = std::max(sup_ratio, r);
}

double ScanReport::drift() const {
  require(refined_sup.has_value(), "scan report: no refined run recorded");
  if (sup_ratio == 0.0) return *refined_sup == 0.0 ? 0.0 : kInf;
  return std::abs(*refined_sup - sup_ratio) / sup_ratio;
}

bool ScanReport::stable() const { return refined_sup.has_value() && drift() < 0.1; }

bool ScanReport::ratios_valid() const {
  return std::all_of(ratio.begin(), ratio.end(), [](double r) { return std::isfinite(r) && r >= 0.0; });
}

std::string ScanReport::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# id=" << id << "\n";
  os << "# resolution=" << resolution.first << "x" << resolution.second << "\n";
  os << "# sup_ratio=" << sup_ratio << "\n";
  if (refined_sup) {
    os << "# refined_resolution=" << refined_resolution->first << "x" << refined_resolution->second << "\n";
    os << "# refined_sup=" << *refined_sup << "\n";
    os << "# stable=" << (stable() ? "true" : "false") << "\n";
  }
  os << "# excluded=" << excluded << "\n";
  for (const auto& note : notes) os << "# note=" << note << "\n";
  os << "sample," << parameter << ",angle,ratio\n";
  for (std::size_t i = 0; i < ratio.size(); ++i)
    os << sample[i] << "," << value[i] << "," << angle[i] << "," << ratio[i] << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

KernelNorm kernel_l1_norm(std::complex<double> lambda) {
  require(std::abs(lambda) > 0.0, "kernel_l1_norm: lambda must be nonzero");
  const double psi = std::arg(lambda);
  require(std::abs(psi) < kPi, "kernel_l1_norm: lambda must lie in the slit plane |arg| < pi");
  const double mod = std::abs(lambda);
  const std::complex<double> root = std::sqrt(lambda);  // principal branch, Re > 0
  const double a = root.real();                          // |lambda|^{1/2} cos(psi/2)
  boost::math::quadrature::exp_sinh<double> integrator;
  // In polar coordinates the 4 pi r^2 of the sphere cancels the 1/(4 pi r) of the kernel.
  const double mass = integrator.integrate([a](double r) { return r * std::exp(-a * r); });
  // |grad K| = e^{-a r} |lambda^{1/2} r + 1| / (4 pi r^2)
  const double grad_mass =
      integrator.integrate([a, root](double r) { return std::exp(-a * r) * std::abs(root * r + 1.0); });
  const double sec = 1.0 / std::cos(0.5 * psi);
  KernelNorm out;
  out.psi = psi;
  out.numeric = mod * mass;
  out.exact = sec * sec;
  out.grad_numeric = std::sqrt(mod) * grad_mass;
  out.grad_bound = sec + sec * sec;
  return out;
}

// ---------------------------------------------------------------------------

double torus_mixed_norm(const TorusField& f, double q, double p) {
  const double wz = 1.0 / f.n3;
  const double wh = 1.0 / (static_cast<double>(f.n1) * f.n2);
  std::vector<double> cols(static_cast<std::size_t>(f.n1) * f.n2);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const double* col = f.values.data() + c * f.n3;
    double acc = 0.0;
    if (std::isinf(p)) {
      for (int l = 0; l < f.n3; ++l) acc = std::max(acc, std::abs(col[l]));
    } else {
      for (int l = 0; l < f.n3; ++l) acc += std::pow(std::abs(col[l]), p) * wz;
      acc = std::pow(acc, 1.0 / p);
    }
    cols[c] = acc;
  }
  if (std::isinf(q)) return *std::max_element(cols.begin(), cols.end());
  double acc = 0.0;
  for (double v : cols) acc += std::pow(v, q) * wh;
  return std::pow(acc, 1.0 / q);
}

TorusField torus_convolution(const TorusField& g, const TorusField& f) {
  require(g.n1 == f.n1 && g.n2 == f.n2 && g.n3 == f.n3, "torus_convolution: shape mismatch");
  const int n1 = f.n1, n2 = f.n2, n3 = f.n3;
  const double cell = 1.0 / (static_cast<double>(n1) * n2 * n3);
  TorusField out{n1, n2, n3, std::vector<double>(f.values.size(), 0.0)};
  auto at = [&](const TorusField& t, int i, int j, int l) {
    return t.values[(static_cast<std::size_t>(i) * n2 + j) * n3 + l];
  };
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int l = 0; l < n3; ++l) {
        double acc = 0.0;
        for (int a = 0; a < n1; ++a)
          for (int b = 0; b < n2; ++b)
            for (int c = 0; c < n3; ++c)
              acc += at(g, (i - a + n1) % n1, (j - b + n2) % n2, (l - c + n3) % n3) * at(f, a, b, c);
        out.values[(static_cast<std::size_t>(i) * n2 + j) * n3 + l] = acc * cell;
      }
  return out;
}

double young_ratio(const TorusField& g, const TorusField& f, double q, double p) {
  const double den = torus_mixed_norm(g, 1.0, 1.0) * torus_mixed_norm(f, q, p);
  if (den < kDenominatorFloor) return 0.0;
  return torus_mixed_norm(torus_convolution(g, f), q, p) / den;
}

ScanReport young_anisotropic_test(int count, double q, double p, std::uint64_t seed, YoungSamples kind, int n) {
  require(q >= 1.0 && p >= 1.0, "young_anisotropic_test: exponents must be >= 1");
  require(n >= 2, "young_anisotropic_test: torus needs at least 2 points per direction");
  ScanReport report;
  report.id = "young";
  report.parameter = "q";
  report.resolution = {n, n};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::size_t size = static_cast<std::size_t>(n) * n * n;
  for (int s = 0; s < count; ++s) {
    TorusField g{n, n, n, std::vector<double>(size)};
    TorusField f{n, n, n, std::vector<double>(size)};
    switch (kind) {
      case YoungSamples::random_nonnegative:
        for (auto& v : g.values) v = uniform(rng);
        for (auto& v : f.values) v = uniform(rng);
        break;
      case YoungSamples::random_signed:
        for (auto& v : g.values) v = normal(rng);
        for (auto& v : f.values) v = normal(rng);
        break;
      case YoungSamples::delta:
        g.values[0] = static_cast<double>(size);
        for (auto& v : f.values) v = normal(rng);
        break;
      case YoungSamples::box_mode: {
        // Box of 3 cells centred at the origin in each direction, unit mass.
        for (int i = -1; i <= 1; ++i)
          for (int j = -1; j <= 1; ++j)
            for (int l = -1; l <= 1; ++l)
              g.values[(static_cast<std::size_t>((i + n) % n) * n + (j + n) % n) * n + (l + n) % n] =
                  static_cast<double>(size) / 27.0;
        std::uniform_int_distribution<int> mode(0, n / 2);
        const int m1 = mode(rng), m2 = mode(rng), m3 = mode(rng);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
              f.values[(static_cast<std::size_t>(i) * n + j) * n + l] =
                  std::cos(2.0 * kPi * (m1 * i + m2 * j + m3 * l) / n);
        break;
      }
    }
    const double den = torus_mixed_norm(g, 1.0, 1.0) * torus_mixed_norm(f, q, p);
    report.add(s, q, torus_mixed_norm(torus_convolution(g, f), q, p), den, p);
  }
  report.notes.push_back("angle column holds the vertical exponent p");
  return report;
}

// ---------------------------------------------------------------------------

std::vector<double> small_time_gradient_trend(const Grid& grid, const SpectralField& f,
                                              const std::vector<double>& times, double p) {
  StokesOperator op(grid);
  std::vector<double> out;
  for (double t : times) out.push_back(std::sqrt(t) * gradient_mixed_norm(op.semigroup(t, f), kInf, p));
  return out;
}

ScanReport semigroup_decay_scan(const Grid& grid, const DecayScanOptions& options) {
  require(options.p > 3.0, "semigroup_decay_scan: p must exceed 3");
  require(!options.times.empty(), "semigroup_decay_scan: empty time grid");
  const bool derivative = options.combo == DecayCombo::semigroup_projected_derivative ||
                          options.combo == DecayCombo::grad_semigroup_projected_derivative;
  auto scan = [&](const Grid& g) {
    StokesOperator op(g);
    const double beta = op.spectral_bound(Subspace::solenoidal).bound;
    ScanReport report;
    report.parameter = "t";
    report.notes.push_back("beta=" + std::to_string(beta));
    for (int s = 0; s < options.samples; ++s) {
      const std::uint64_t seed = options.seed + 7919u * static_cast<std::uint64_t>(s);
      SpectralField f(g, 2);
      SpectralField datum(g, 2);
      if (options.combo == DecayCombo::grad_semigroup) {
        f = random_family(seed, {.decay = 2.0, .max_h = options.band, .max_k = std::min(g.k(), 6)})(g);
        datum = f;
      } else {
        f = compact_profile_family(seed, options.band)(g);
        if (!derivative) {
          datum = project_hydrostatic(f);
        } else if (options.direction == Direction3::z) {
          datum = compact_profile_family(seed, options.band, true)(g);
        } else {
          datum = project_hydrostatic(derivative_along(f, options.direction));
        }
      }
      const double fnorm = mixed_norm(f, kInf, options.p);
      for (double t : options.times) {
        const SpectralField e = op.semigroup(t, datum);
        double num = 0.0;
        switch (options.combo) {
          case DecayCombo::grad_semigroup:
          case DecayCombo::grad_semigroup_projected:
            num = std::sqrt(t) * gradient_mixed_norm(e, kInf, options.p);
            break;
          case DecayCombo::dz_semigroup_projected:
            num = std::sqrt(t) * vertical_derivative_norm(e, options.p);
            break;
          case DecayCombo::semigroup_projected_derivative:
            num = std::sqrt(t) * mixed_norm(e, kInf, options.p);
            break;
          case DecayCombo::grad_semigroup_projected_derivative:
            num = t * gradient_mixed_norm(e, kInf, options.p);
            break;
        }
        report.add(s, t, num, std::exp(beta * t) * fnorm);
      }
    }
    return report;
  };
  ScanReport report = with_refinement(grid, options.refine, scan);
  static const char* names[] = {"grad_semigroup", "grad_semigroup_projected", "dz_semigroup_projected",
                                "semigroup_projected_derivative", "grad_semigroup_projected_derivative"};
  static const char* dirs[] = {"x", "y", "z"};
  report.id = std::string(names[static_cast<int>(options.combo)]) +
              (derivative ? std::string("_d") + dirs[static_cast<int>(options.direction)] : "");
  return report;
}

// ---------------------------------------------------------------------------

ScanReport resolvent_scan(const Grid& grid, const ResolventScanOptions& options) {
  require(options.theta > 0.0 && options.theta < kPi, "resolvent_scan: sector angle must lie in (0, pi)");
  require(!options.magnitudes.empty(), "resolvent_scan: empty lambda grid");
  const auto angles = sector_angles(options.theta, options.angles);
  const bool stokes = options.kind == ResolventKind::stokes;
  auto scan = [&](const Grid& g) {
    StokesOperator op(g);
    ScanReport report;
    report.parameter = "abs_lambda";
    for (int s = 0; s < options.samples; ++s) {
      const std::uint64_t seed = options.seed + 104729u * static_cast<std::uint64_t>(s);
      SpectralField f(g, 2), datum(g, 2);
      if (options.derivative_datum) {
        f = compact_profile_family(seed, options.band)(g);
        datum = options.direction == Direction3::z ? compact_profile_family(seed, options.band, true)(g)
                                                   : derivative_along(f, options.direction);
        if (stokes) datum = project_hydrostatic(datum);
      } else {
        f = random_field(g, seed, {.decay = 2.0, .max_h = options.band, .max_k = std::min(g.k(), 6),
                                   .solenoidal = stokes});
        datum = f;
      }
      const double fnorm = mixed_norm(f, options.q, options.p);
      for (double mag : options.magnitudes)
        for (double phi : angles) {
          const Complex lambda = std::polar(mag, phi);
          SpectralField v(g, 2);
          try {
            v = stokes ? op.resolvent(lambda, datum) : op.laplace_resolvent(lambda, datum);
          } catch (const SingularityError& e) {
            ++report.excluded;
            report.notes.push_back(e.what());
            continue;
          }
          double num = 0.0;
          if (options.derivative_datum) {
            num = std::sqrt(mag) * complex_mixed_norm(v, options.q, options.p);
          } else {
            num = mag * complex_mixed_norm(v, options.q, options.p) +
                  std::sqrt(mag) * complex_gradient_norm(v, options.q, options.p) +
                  complex_mixed_norm(laplacian(v), options.q, options.p);
          }
          report.add(s, mag, num, fnorm, phi);
        }
    }
    return report;
  };
  ScanReport report = with_refinement(grid, options.refine, scan);
  report.id = std::string(stokes ? "stokes" : "laplace") + "_resolvent" + (options.derivative_datum ? "_derivative" : "");
  return report;
}

// ---------------------------------------------------------------------------

ScanReport horizontal_multiplier_scan(const MultiplierScanOptions& options) {
  require(options.theta >= 0.0 && options.theta < 0.5 * kPi, "horizontal_multiplier_scan: theta must lie in [0, pi/2)");
  require(!options.magnitudes.empty(), "horizontal_multiplier_scan: empty tau grid");
  const auto angles = sector_angles(options.theta, options.angles);
  auto scan = [&](int n) {
    require(n / 2 - 1 >= options.band, "horizontal_multiplier_scan: grid too coarse for the band");
    ScanReport report;
    report.parameter = "abs_tau";
    std::mt19937_64 rng(options.seed);
    for (int s = 0; s < options.samples; ++s) {
      const PlanarField f = random_planar(n, options.band, rng);
      const double fsup = planar_sup(node_values(f));
      const PlanarField qf = helmholtz_2d(f);
      for (double mag : options.magnitudes)
        for (double phi : angles) {
          const Complex tau = std::polar(mag, phi);
          // grad_H of e^{tau Delta_H} Q f: components d_a (Qf)_c.
          PlanarField grad(n, 4);
          for (int mi = 0; mi < n; ++mi)
            for (int ni = 0; ni < n; ++ni) {
              const double xx = fourier_wavenumber(mi, n);
              const double xy = fourier_wavenumber(ni, n);
              const int sm = mi < n / 2 ? mi : mi - n;
              const int sn = ni < n / 2 ? ni : ni - n;
              const double xi2 = 4.0 * kPi * kPi * (sm * sm + sn * sn);
              const Complex decay = std::exp(-tau * xi2);
              for (int c = 0; c < 2; ++c) {
                grad(2 * c, mi, ni) = Complex(0.0, xx) * decay * qf(c, mi, ni);
                grad(2 * c + 1, mi, ni) = Complex(0.0, xy) * decay * qf(c, mi, ni);
              }
            }
          report.add(s, mag, std::sqrt(mag) * planar_sup(node_values(grad)), fsup, phi);
        }
    }
    return report;
  };
  ScanReport report = scan(options.n);
  report.resolution = {options.n, 1};
  if (options.refine) {
    report.refined_sup = scan(2 * options.n).sup_ratio;
    report.refined_resolution = std::make_pair(2 * options.n, 1);
  }
  report.id = "horizontal_multiplier";
  return report;
}

std::vector<double> projection_linf_growth(const std::vector<int>& resolutions) {
  std::vector<double> out;
  for (int n : resolutions) {
    require(n >= 4 && n % 2 == 0, "projection_linf_growth: resolutions must be even and >= 4");
    std::vector<std::vector<Complex>> values(2, std::vector<Complex>(static_cast<std::size_t>(n) * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // Cell-centred samples avoid the zeros of sin on the nodes.
        const double x = (i + 0.5) / n;
        const double y = (j + 0.5) / n;
        const double sx = std::sin(2.0 * kPi * x) > 0.0 ? 1.0 : -1.0;
        const double sy = std::sin(2.0 * kPi * y) > 0.0 ? 1.0 : -1.0;
        values[0][static_cast<std::size_t>(i) * n + j] = sx * sy;
      }
    const PlanarField f = planar_from_values(values, n);
    out.push_back(planar_sup(node_values(helmholtz_2d(f))) / planar_sup(values));
  }
  return out;
}

// ---------------------------------------------------------------------------

double interpolation_ratio_single(const SpectralField& v, double x0, double y0, double r, double p, double q) {
  const Grid& g = v.grid();
  require(r > 0.0 && r <= 0.5, "interpolation ratio: radius must lie in (0, 1/2]");
  PhysicalField values = inverse_transform(v);
  PhysicalField grad(g, 2 * v.ncomp());
  for (int c = 0; c < v.ncomp(); ++c) {
    SpectralField comp(g, 1);
    std::copy(v.component(c).begin(), v.component(c).end(), comp.component(0).begin());
    for (int a = 0; a < 2; ++a) {
      const PhysicalField d = inverse_transform(horizontal_derivative(comp, a == 0 ? Axis::x : Axis::y));
      std::copy(d.component(0).begin(), d.component(0).end(), grad.component(2 * c + a).begin());
    }
  }
  const auto cols = column_norms(values, q);
  const auto gcols = column_norms(grad, q);
  const auto inside = disk_weights(g.n(), x0, y0, r);
  const double lhs = disk_sup(cols, inside);
  const double rhs = std::pow(r, -2.0 / p) * (disk_lp(cols, inside, g.n(), p) + r * disk_lp(gcols, inside, g.n(), p));
  if (rhs < kDenominatorFloor) return std::numeric_limits<double>::quiet_NaN();
  return lhs / rhs;
}

ScanReport interpolation_ratio(const Grid& grid, const LocalScanOptions& options) {
  require(options.p > 2.0, "interpolation_ratio: p must exceed 2");
  require(!options.radii.empty(), "interpolation_ratio: empty radius grid");
  auto scan = [&](const Grid& g) {
    ScanReport report;
    report.parameter = "r";
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int s = 0; s < options.samples; ++s) {
      const SpectralField v =
          random_field(g, options.seed + 15485863u * static_cast<std::uint64_t>(s),
                       {.decay = 2.0, .max_h = options.band, .max_k = std::min(g.k(), 6), .solenoidal = false});
      for (int c = 0; c < options.centers; ++c) {
        const double x0 = uniform(rng);
        const double y0 = uniform(rng);
        for (double r : options.radii) {
          const double ratio = interpolation_ratio_single(v, x0, y0, r, options.p, options.q);
          if (std::isnan(ratio)) {
            ++report.excluded;
            continue;
          }
          report.add(s, r, ratio, 1.0);
        }
      }
    }
    return report;
  };
  ScanReport report = with_refinement(grid, options.refine, scan);
  report.id = "interpolation";
  return report;
}

ScanReport log_riesz_ratio(int n, const LocalScanOptions& options) {
  require(options.p >= 1.0, "log_riesz_ratio: p must be >= 1");
  require(!options.radii.empty(), "log_riesz_ratio: empty radius grid");
  auto scan = [&](int nn) {
    ScanReport report;
    report.parameter = "r";
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int s = 0; s < options.samples; ++s) {
      const PlanarField f = random_planar(nn, options.band, rng);
      const double fsup = planar_sup(node_values(f));
      // grad pi = (1 - Q) F for Delta_H pi = div_H F.
      PlanarField grad = f;
      const PlanarField qf = helmholtz_2d(f);
      for (std::size_t i = 0; i < grad.data().size(); ++i) grad.data()[i] -= qf.data()[i];
      const auto gv = node_values(grad);
      std::vector<double> mag(gv.front().size());
      for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::sqrt(std::norm(gv[0][i]) + std::norm(gv[1][i]));
      for (int c = 0; c < options.centers; ++c) {
        const double x0 = uniform(rng);
        const double y0 = uniform(rng);
        for (double r : options.radii) {
          const auto inside = disk_weights(nn, x0, y0, r);
          const double lhs = disk_lp(mag, inside, nn, options.p);
          report.add(s, r, lhs, std::pow(r, 2.0 / options.p) * (1.0 + std::abs(std::log(r))) * fsup);
        }
      }
    }
    return report;
  };
  ScanReport report = scan(n);
  report.resolution = {n, 1};
  if (options.refine) {
    report.refined_sup = scan(2 * n).sup_ratio;
    report.refined_resolution = std::make_pair(2 * n, 1);
  }
  report.id = "log_riesz";
  return report;
}

// ---------------------------------------------------------------------------

std::vector<ScanReport> nonlinear_estimate_scan(const Grid& grid, const NonlinearScanOptions& options) {
  require(options.p > 3.0, "nonlinear_estimate_scan: p must exceed 3");
  require(!options.times.empty(), "nonlinear_estimate_scan: empty time grid");
  auto scan = [&](const Grid& g) {
    StokesOperator op(g);
    NonlinearWorkspace ws(g);
    std::vector<ScanReport> reports(4);
    for (auto& r : reports) r.parameter = "t";
    for (int s = 0; s < options.samples; ++s) {
      const RandomFieldOptions band{.decay = 2.0, .max_h = options.band, .max_k = std::min(g.k(), 6)};
      const SpectralField v1 = random_field(g, options.seed + 2u * s, band);
      const SpectralField v2 = random_field(g, options.seed + 2u * s + 1u, band);
      const SpectralField pn = project_hydrostatic(ws.advection(v1, v2));
      const double n1 = mixed_norm(v1, kInf, options.p);
      const double n2 = mixed_norm(v2, kInf, options.p);
      const double g1 = gradient_mixed_norm(v1, kInf, options.p);
      const double g2 = gradient_mixed_norm(v2, kInf, options.p);
      for (double t : options.times) {
        const SpectralField e = op.semigroup(t, pn);
        const double en = mixed_norm(e, kInf, options.p);
        const double eg = gradient_mixed_norm(e, kInf, options.p);
        const double st = std::sqrt(t);
        reports[0].add(s, t, st * en, g1 * n2);
        reports[1].add(s, t, st * eg, g1 * g2);
        reports[2].add(s, t, t * eg, g1 * n2);
        reports[3].add(s, t, en, g2 * n1 / st + g1 * g2);
      }
    }
    return reports;
  };
  std::vector<ScanReport> reports = scan(grid);
  std::vector<ScanReport> fine;
  if (options.refine) fine = scan(doubled(grid));
  const char* ids[] = {"nonlinear_value", "nonlinear_gradient", "nonlinear_gradient_t", "nonlinear_value_split"};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].id = ids[i];
    reports[i].resolution = {grid.n(), grid.k()};
    if (options.refine) {
      reports[i].refined_sup = fine[i].sup_ratio;
      reports[i].refined_resolution = std::make_pair(2 * grid.n(), 2 * grid.k());
    }
  }
  return reports;
}

// ---------------------------------------------------------------------------

RecursionCheck recursion_bound_check(double a0, double c1, double c2, int steps) {
  require(c1 > 0.0, "recursion_bound_check: c1 must be positive");
  require(c2 > 0.0 && c2 < 1.0, "recursion_bound_check: c2 must lie in (0, 1)");
  require(a0 >= 0.0, "recursion_bound_check: a0 must be nonnegative");
  require(steps >= 0, "recursion_bound_check: steps must be nonnegative");
  const double gap = 1.0 - c2;
  require(4.0 * c1 * a0 < gap * gap, "recursion_bound_check: hypothesis 4 c1 a0 < (1 - c2)^2 violated");
  RecursionCheck out;
  out.bound = 2.0 * a0 / gap;
  // Rationalized root of c1 x^2 - (1 - c2) x + a0 = 0, free of cancellation.
  out.fixed_point = 2.0 * a0 / (gap + std::sqrt(gap * gap - 4.0 * c1 * a0));
  constexpr double slack = 1e-12;
  out.sequence.push_back(a0);
  out.ok = a0 < out.bound + slack;
  for (int m = 0; m < steps; ++m) {
    const double a = out.sequence.back();
    const double next = a0 + c1 * a * a + c2 * a;
    out.sequence.push_back(next);
    out.ok = out.ok && next < out.bound + slack;
  }
  return out;
}

}  // namespace hydrostokes
