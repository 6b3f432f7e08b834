#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/fields.hpp"
#include "hydrostokes/nonlinear.hpp"
#include "hydrostokes/stokes.hpp"

namespace hydrostokes {

struct SolverConfig {
  int n = 16;
  int k = 16;
  double h = 1.0;
  double p = 4.0;          ///< vertical exponent of the L^inf_H L^p_z norms, > 3
  double dt = 1e-3;
  double horizon = 0.1;
  double delta = 0.01;     ///< smoothing time of the reference data
  std::optional<double> eps0;  ///< rough-part threshold; default 0.05 ||a||
  int max_iter = 8;
  double tol = 1e-10;      ///< absolute S(T)-norm tolerance on successive differences
  bool dealias = true;
  bool reproject = true;
  double blowup_factor = 1e6;

  /// Throws ConfigError when an invariant fails (p > 3, 0 < dt <= T, delta >= 0, ...).
  void validate() const;
  Grid grid() const { return Grid(n, k, h); }
  /// Number of steps of size dt covering the horizon (horizon rounded to a multiple of dt).
  int steps() const;
};

/// Diagnostics along a trajectory, one entry per time node.
struct Diagnostics {
  std::vector<double> energy;            ///< (1/2) ||v||_{L^2}^2
  std::vector<double> sol_drift;         ///< check_solenoidal(v)
  std::vector<double> norm_inf_p;        ///< ||v||_{L^inf_H L^p_z}
  std::vector<double> t_sqrt_grad_norm;  ///< t^{1/2} ||grad v||_{L^inf_H L^p_z}
  std::vector<double> residual;          ///< mild-form residual (L^2)
  std::vector<double> pressure_grad;     ///< ||grad_H pi||_{L^2(G)} of the surface pressure
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  Diagnostics diagnostics;
  double max_energy_growth = 0.0;  ///< largest relative one-step energy increase
};

struct IterationReport {
  std::vector<double> times;
  /// h_series[m][n] = max_{s <= t_n} ||V_m(s)||, k_series[m][n] = max_{0 < s <= t_n} s^{1/2} ||grad V_m(s)||.
  std::vector<std::vector<double>> h_series;
  std::vector<std::vector<double>> k_series;
  std::vector<double> s_norm;      ///< ||V_m||_{S(T)}
  std::vector<double> diff_norm;   ///< ||V_m - V_{m-1}||_{S(T)}, with V_{-1} = 0
  std::vector<double> ratios;      ///< diff_norm[m] / diff_norm[m-1] for m >= 1
  bool converged = false;
  int iterations = 0;              ///< index of the last computed iterate
};

class IterationDiverged : public Error {
 public:
  IterationDiverged(const std::string& what, IterationReport report)
      : Error(what), report_(std::move(report)) {}
  const IterationReport& report() const { return report_; }

 private:
  IterationReport report_;
};

/// Uses one operator, one nonlinear workspace and one configuration for
/// every stage, so semigroup factors are shared through the operator cache.
class MildSolver {
 public:
  explicit MildSolver(SolverConfig config);

  const SolverConfig& config() const { return config_; }
  const StokesOperator& op() const { return op_; }

  /// (e^{delta A} a, a - e^{delta A} a).
  std::pair<SpectralField, SpectralField> split_data(const SpectralField& a, double delta) const;

  /// Exponential-Euler trajectory of the full nonlinear problem from a_ref.
  /// Throws BlowUpError if ||v_n||_{L^2} exceeds blowup_factor times its start.
  Trajectory reference_solve(const SpectralField& a_ref);

  /// Picard iteration for the rough part V around a reference trajectory.
  /// Throws IterationDiverged when the difference norm doubles twice in a row.
  std::pair<Trajectory, IterationReport> picard_iterate(const SpectralField& a0, const Trajectory& v_ref);

  /// Splits a (halving delta until ||a_0|| <= eps0), solves both parts and
  /// returns v = v_ref + V with diagnostics. The split and report are kept.
  Trajectory full_solve(const SpectralField& a);

  /// Mild-form residual ||v(t_n) - e^{t_n A} v(0) - int_0^{t_n} e^{(t_n - s)A} P F(v(s)) ds||_{L^2}
  /// with the trapezoidal rule; `linear` sets F = 0.
  std::vector<double> mild_residual(const Trajectory& v, bool linear = false);

  /// Fills energy, drift, norms and pressure of a trajectory.
  void compute_diagnostics(Trajectory& traj);

  /// ||V||_{S(T)} pieces over a sequence on the trajectory time grid.
  struct SNorm {
    std::vector<double> h_running;
    std::vector<double> k_running;
    double value = 0.0;
  };
  SNorm s_norm(const std::vector<double>& times, const std::vector<SpectralField>& states) const;

  /// -P (u_src . grad) v.
  SpectralField forcing(const SpectralField& u_src, const SpectralField& v);

  double last_delta() const { return last_delta_; }
  double last_rough_norm() const { return last_rough_norm_; }
  const IterationReport& last_report() const { return last_report_; }

 private:
  SolverConfig config_;
  Grid grid_;
  StokesOperator op_;
  NonlinearWorkspace workspace_;
  double last_delta_ = 0.0;
  double last_rough_norm_ = 0.0;
  IterationReport last_report_;
};

}  // namespace hydrostokes
