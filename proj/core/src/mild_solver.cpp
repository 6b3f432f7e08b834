#include "hydrostokes/mild_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "hydrostokes/norms.hpp"
#include "hydrostokes/projection.hpp"
#include "hydrostokes/transforms.hpp"

namespace hydrostokes {
namespace {

void check(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

double planar_l2(const PlanarField& g) {
  double sum = 0.0;
  for (const auto& z : g.data()) sum += std::norm(z);
  return std::sqrt(sum);
}

double uniform_step(const std::vector<double>& times) {
  require(times.size() >= 1, "trajectory has no time nodes");
  if (times.size() == 1) return 0.0;
  const double dt = times[1] - times[0];
  require(dt > 0.0, "trajectory times must increase");
  for (std::size_t n = 1; n < times.size(); ++n) {
    require(std::abs(times[n] - times[0] - n * dt) <= 1e-9 * n * dt, "trajectory time grid must be uniform");
  }
  return dt;
}

}  // namespace

void SolverConfig::validate() const {
  check(n >= 4 && n % 2 == 0, "grid.n must be even and at least 4");
  check(k >= 1, "grid.k must be at least 1");
  check(h > 0.0 && std::isfinite(h), "grid.h must be positive");
  check(p > 3.0 && std::isfinite(p), "norm.p must be finite and greater than 3");
  check(horizon > 0.0 && std::isfinite(horizon), "time.horizon must be positive");
  check(dt > 0.0 && dt <= horizon, "time.dt must satisfy 0 < dt <= horizon");
  check(delta >= 0.0 && std::isfinite(delta), "split.delta must be nonnegative");
  check(!eps0 || *eps0 >= 0.0, "split.eps0 must be nonnegative");
  check(max_iter >= 1, "picard.max_iter must be at least 1");
  check(tol > 0.0, "picard.tol must be positive");
  check(blowup_factor > 1.0, "blow-up factor must exceed 1");
}

int SolverConfig::steps() const { return std::max(1, static_cast<int>(std::lround(horizon / dt))); }

MildSolver::MildSolver(SolverConfig config)
    : config_((config.validate(), config)),
      grid_(config_.grid()),
      op_(grid_),
      workspace_(grid_, config_.dealias) {}

SpectralField MildSolver::forcing(const SpectralField& u_src, const SpectralField& v) {
  SpectralField f = project_hydrostatic(workspace_.advection(u_src, v));
  f *= -1.0;
  return f;
}

std::pair<SpectralField, SpectralField> MildSolver::split_data(const SpectralField& a, double delta) const {
  require(delta >= 0.0, "split_data: delta must be nonnegative");
  SpectralField a_ref = op_.semigroup(delta, a);
  SpectralField a0 = a - a_ref;
  return {std::move(a_ref), std::move(a0)};
}

Trajectory MildSolver::reference_solve(const SpectralField& a_ref) {
  require(a_ref.grid() == grid_, "reference_solve: grid mismatch");
  const int steps = config_.steps();
  const double dt = config_.dt;
  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(a_ref);
  const double start = l2_norm(a_ref);
  double energy = start * start;
  for (int n = 0; n < steps; ++n) {
    const SpectralField& v = traj.states.back();
    SpectralField next = op_.semigroup(dt, v) + dt * op_.phi1(dt, forcing(v, v));
    if (config_.reproject) next = project_hydrostatic(next);
    const double norm = l2_norm(next);
    if (!std::isfinite(norm) || (start > 0.0 && norm > config_.blowup_factor * start)) {
      throw BlowUpError("reference_solve: ||v|| = " + std::to_string(norm) + " at t = " +
                        std::to_string((n + 1) * dt) + " exceeds " + std::to_string(config_.blowup_factor) +
                        " times the initial norm " + std::to_string(start));
    }
    const double next_energy = norm * norm;
    if (energy > 0.0) traj.max_energy_growth = std::max(traj.max_energy_growth, (next_energy - energy) / energy);
    energy = next_energy;
    traj.times.push_back((n + 1) * dt);
    traj.states.push_back(std::move(next));
  }
  return traj;
}

MildSolver::SNorm MildSolver::s_norm(const std::vector<double>& times,
                                     const std::vector<SpectralField>& states) const {
  SNorm out;
  double hmax = 0.0;
  double kmax = 0.0;
  for (std::size_t n = 0; n < states.size(); ++n) {
    hmax = std::max(hmax, mixed_norm(states[n], kInf, config_.p));
    if (times[n] > 0.0) kmax = std::max(kmax, std::sqrt(times[n]) * gradient_mixed_norm(states[n], kInf, config_.p));
    out.h_running.push_back(hmax);
    out.k_running.push_back(kmax);
  }
  out.value = std::max(hmax, kmax);
  return out;
}

std::pair<Trajectory, IterationReport> MildSolver::picard_iterate(const SpectralField& a0, const Trajectory& v_ref) {
  require(a0.grid() == grid_, "picard_iterate: grid mismatch");
  const double dt = uniform_step(v_ref.times);
  const std::size_t nodes = v_ref.times.size();
  require(nodes >= 2, "picard_iterate: reference trajectory needs at least two nodes");
  require(v_ref.times.back() >= config_.horizon - 1e-9 * config_.horizon,
          "picard_iterate: reference trajectory does not cover the horizon");

  // V_0(t_n) = e^{t_n A} a0, built by repeated steps of the cached e^{dt A}.
  std::vector<SpectralField> free;
  free.reserve(nodes);
  free.push_back(a0);
  for (std::size_t n = 1; n < nodes; ++n) free.push_back(op_.semigroup(dt, free.back()));

  std::vector<SpectralField> base;
  base.reserve(nodes);
  for (const auto& v : v_ref.states) base.push_back(workspace_.advection(v, v));

  IterationReport report;
  report.times = v_ref.times;
  auto record = [&](const std::vector<SpectralField>& iterate, double diff) {
    const SNorm s = s_norm(v_ref.times, iterate);
    report.h_series.push_back(s.h_running);
    report.k_series.push_back(s.k_running);
    report.s_norm.push_back(s.value);
    if (!report.diff_norm.empty()) {
      const double prev = report.diff_norm.back();
      report.ratios.push_back(prev > 0.0 ? diff / prev : 0.0);
    }
    report.diff_norm.push_back(diff);
  };

  std::vector<SpectralField> current = free;
  record(current, s_norm(v_ref.times, current).value);
  report.converged = report.diff_norm.back() < config_.tol;

  for (int m = 0; m < config_.max_iter && !report.converged; ++m) {
    // F_m = -P[(U_m + u_ref).grad (V_m + v_ref) - u_ref.grad v_ref]
    std::vector<SpectralField> f;
    f.reserve(nodes);
    for (std::size_t n = 0; n < nodes; ++n) {
      const SpectralField total = current[n] + v_ref.states[n];
      SpectralField g = project_hydrostatic(workspace_.advection(total, total) - base[n]);
      g *= -1.0;
      f.push_back(std::move(g));
    }
    std::vector<SpectralField> next;
    next.reserve(nodes);
    next.push_back(a0);
    SpectralField integral(grid_, 2);
    for (std::size_t n = 1; n < nodes; ++n) {
      integral = op_.semigroup(dt, integral + (0.5 * dt) * f[n - 1]) + (0.5 * dt) * f[n];
      next.push_back(free[n] + integral);
    }
    std::vector<SpectralField> diff;
    diff.reserve(nodes);
    for (std::size_t n = 0; n < nodes; ++n) diff.push_back(next[n] - current[n]);
    const double dnorm = s_norm(v_ref.times, diff).value;
    current = std::move(next);
    record(current, dnorm);
    report.iterations = m + 1;
    if (dnorm < config_.tol) {
      report.converged = true;
      break;
    }
    const auto& d = report.diff_norm;
    if (d.size() >= 3 && d[d.size() - 1] > 2.0 * d[d.size() - 2] && d[d.size() - 2] > 2.0 * d[d.size() - 3]) {
      last_report_ = report;
      throw IterationDiverged("picard_iterate: successive differences doubled twice (last " +
                                  std::to_string(dnorm) + ")",
                              report);
    }
  }

  Trajectory traj;
  traj.times = v_ref.times;
  traj.states = std::move(current);
  last_report_ = report;
  return {std::move(traj), std::move(report)};
}

std::vector<double> MildSolver::mild_residual(const Trajectory& v, bool linear) {
  const double dt = uniform_step(v.times);
  std::vector<double> out;
  out.reserve(v.states.size());
  SpectralField free = v.states.front();
  SpectralField integral(grid_, 2);
  SpectralField f_prev(grid_, 2);
  for (std::size_t n = 0; n < v.states.size(); ++n) {
    SpectralField f = linear ? SpectralField(grid_, 2) : forcing(v.states[n], v.states[n]);
    if (n > 0) {
      free = op_.semigroup(dt, free);
      integral = op_.semigroup(dt, integral + (0.5 * dt) * f_prev) + (0.5 * dt) * f;
    }
    out.push_back(l2_norm(v.states[n] - free - integral));
    f_prev = std::move(f);
  }
  return out;
}

void MildSolver::compute_diagnostics(Trajectory& traj) {
  Diagnostics d;
  traj.max_energy_growth = 0.0;
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    const SpectralField& v = traj.states[n];
    const double norm = l2_norm(v);
    d.energy.push_back(0.5 * norm * norm);
    d.sol_drift.push_back(check_solenoidal(v));
    d.norm_inf_p.push_back(mixed_norm(v, kInf, config_.p));
    d.t_sqrt_grad_norm.push_back(std::sqrt(traj.times[n]) * gradient_mixed_norm(v, kInf, config_.p));
    SpectralField f = workspace_.advection(v, v);
    f *= -1.0;
    d.pressure_grad.push_back(planar_l2(recover_pressure_gradient(v, f)));
    if (n > 0 && d.energy[n - 1] > 0.0) {
      traj.max_energy_growth =
          std::max(traj.max_energy_growth, (d.energy[n] - d.energy[n - 1]) / d.energy[n - 1]);
    }
  }
  d.residual = traj.times.size() >= 2 ? mild_residual(traj) : std::vector<double>(traj.states.size(), 0.0);
  traj.diagnostics = std::move(d);
}

Trajectory MildSolver::full_solve(const SpectralField& a) {
  require(a.grid() == grid_, "full_solve: grid mismatch");
  const double a_norm = mixed_norm(a, kInf, config_.p);
  const double eps0 = config_.eps0.value_or(0.05 * a_norm);
  double delta = config_.delta;
  auto [a_ref, a0] = split_data(a, delta);
  double rough = mixed_norm(a0, kInf, config_.p);
  while (rough > eps0 && delta > 1e-14) {
    delta *= 0.5;
    std::tie(a_ref, a0) = split_data(a, delta);
    rough = mixed_norm(a0, kInf, config_.p);
  }
  last_delta_ = delta;
  last_rough_norm_ = rough;

  Trajectory v_ref = reference_solve(a_ref);
  auto [big_v, report] = picard_iterate(a0, v_ref);
  Trajectory v;
  v.times = v_ref.times;
  v.states.reserve(v.times.size());
  for (std::size_t n = 0; n < v.times.size(); ++n) v.states.push_back(v_ref.states[n] + big_v.states[n]);
  compute_diagnostics(v);
  return v;
}

}  // namespace hydrostokes
