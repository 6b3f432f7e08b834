#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/estimate_lab.hpp"
#include "hydrostokes/io.hpp"
#include "hydrostokes/mild_solver.hpp"
#include "hydrostokes/norms.hpp"
#include "hydrostokes/stokes.hpp"
#include "hydrostokes/transforms.hpp"

namespace fs = std::filesystem;
using namespace hydrostokes;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kDiverged = 3 };

std::string quoted(const std::string& s) {
  std::ostringstream os;
  os << std::quoted(s);
  return os.str();
}

int report_error(const char* kind, const std::string& message, int code) {
  std::cerr << "hydrostokes: error kind=" << kind << " code=" << code << " message=" << quoted(message) << "\n";
  return code;
}

RunConfig config_from(const std::string& path) { return path.empty() ? parse_config("") : load_config(path); }

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string init;
  std::optional<double> amplitude;
  std::optional<int> snapshot_every;
  std::string output;
};

int cmd_simulate(const SimulateArgs& args) {
  RunConfig cfg = config_from(args.config);
  if (!args.init.empty()) cfg.init.kind = parse_init_kind(args.init);
  if (args.amplitude) {
    if (!(*args.amplitude >= 0.0)) throw ConfigError("--amplitude must be nonnegative");
    cfg.init.amplitude = *args.amplitude;
  }
  if (args.snapshot_every) {
    if (*args.snapshot_every < 0) throw ConfigError("--snapshot-every must be nonnegative");
    cfg.snapshot_every = *args.snapshot_every;
  }
  if (!args.output.empty()) cfg.output_dir = args.output;

  MildSolver solver(cfg.solver);
  const SpectralField a = make_initial_data(cfg);
  const Trajectory v = solver.full_solve(a);

  const std::size_t last = v.states.size() - 1;
  for (std::size_t n = 0; n <= last; ++n) {
    const bool cadence = cfg.snapshot_every > 0 && n % static_cast<std::size_t>(cfg.snapshot_every) == 0;
    if (!cadence && n != last) continue;
    std::ostringstream name;
    name << "snapshot_" << std::setw(6) << std::setfill('0') << n << ".hstk";
    write_snapshot(cfg.output_dir / name.str(), v.states[n], v.times[n]);
  }
  write_file_atomic(cfg.output_dir / "diagnostics.csv", diagnostics_csv(v));

  const IterationReport& rep = solver.last_report();
  std::cout << "init=" << init_kind_name(cfg.init.kind) << " delta=" << solver.last_delta()
            << " rough_norm=" << solver.last_rough_norm() << " picard_iterations=" << rep.iterations
            << " converged=" << (rep.converged ? "true" : "false") << "\n";
  std::cout << "final energy=" << v.diagnostics.energy.back() << " norm_inf_p=" << v.diagnostics.norm_inf_p.back()
            << "\n";
  if (!rep.converged) return report_error("not_converged", "Picard iteration did not reach picard.tol", kDiverged);
  return kOk;
}

// ---------------------------------------------------------------------------

struct Verifier {
  RunConfig cfg;
  fs::path out;
  bool failed = false;

  void emit(const ScanReport& r) {
    write_file_atomic(out / (r.id + ".csv"), r.to_csv());
    std::cout << std::left << std::setw(44) << r.id << " sup=" << std::setprecision(6) << r.sup_ratio;
    if (r.refined_sup) std::cout << " refined=" << *r.refined_sup << (r.stable() ? " stable" : " unstable");
    std::cout << " excluded=" << r.excluded << (r.ratios_valid() ? "" : " INVALID") << "\n";
  }

  void hard(bool ok, const std::string& what) {
    std::cout << (ok ? "ok    " : "FAIL  ") << what << "\n";
    failed = failed || !ok;
  }

  Grid grid() const { return cfg.solver.grid(); }
  double p() const { return cfg.solver.p; }

  void kernel() {
    std::ostringstream csv;
    csv << std::setprecision(17) << "psi,abs_lambda,numeric,exact,abs_error,grad_numeric,grad_bound\n";
    double worst = 0.0;
    bool grad_ok = true;
    for (double psi : {0.0, std::numbers::pi / 4, -std::numbers::pi / 4, std::numbers::pi / 3,
                       -std::numbers::pi / 3, 0.45 * std::numbers::pi, -0.45 * std::numbers::pi})
      for (double mag : {0.1, 1.0, 10.0}) {
        const KernelNorm k = kernel_l1_norm(std::polar(mag, psi));
        const double err = std::abs(k.numeric - k.exact);
        worst = std::max(worst, err);
        grad_ok = grad_ok && k.grad_numeric <= k.grad_bound * (1.0 + 1e-10);
        csv << psi << "," << mag << "," << k.numeric << "," << k.exact << "," << err << "," << k.grad_numeric << ","
            << k.grad_bound << "\n";
      }
    write_file_atomic(out / "kernel.csv", csv.str());
    hard(worst <= 1e-6, "kernel: max |numeric - sec^2(psi/2)| = " + std::to_string(worst));
    hard(grad_ok, "kernel: gradient norm within sec(psi/2) + sec^2(psi/2)");
  }

  void young() {
    const std::pair<double, double> exps[] = {{kInf, 4.0}, {2.0, 2.0}, {1.0, kInf}};
    int idx = 0;
    for (auto [q, pp] : exps) {
      for (auto kind : {YoungSamples::random_nonnegative, YoungSamples::random_signed, YoungSamples::box_mode}) {
        ScanReport r = young_anisotropic_test(40, q, pp, cfg.seed + 31u * idx++, kind, 6);
        r.id = "young_" + std::to_string(idx);
        emit(r);
        hard(r.sup_ratio <= 1.0 + 1e-10, r.id + ": ratio <= 1 + 1e-10");
      }
    }
  }

  void semigroup() {
    const std::vector<double> times = {1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0};
    for (int c = 0; c < 5; ++c) {
      const int dirs = c >= 3 ? 3 : 1;
      for (int d = 0; d < dirs; ++d) {
        DecayScanOptions o;
        o.combo = static_cast<DecayCombo>(c);
        o.direction = static_cast<Direction3>(d);
        o.times = times;
        o.samples = 5;
        o.seed = cfg.seed;
        o.p = p();
        emit(semigroup_decay_scan(grid(), o));
      }
    }
  }

  void resolvent() {
    for (auto kind : {ResolventKind::stokes, ResolventKind::laplace})
      for (bool deriv : {false, true}) {
        ResolventScanOptions o;
        o.kind = kind;
        o.derivative_datum = deriv;
        o.magnitudes = {0.1, 1.0, 10.0, 100.0, 1000.0};
        o.samples = 3;
        o.seed = cfg.seed;
        o.p = p();
        emit(resolvent_scan(grid(), o));
      }
  }

  void multiplier() {
    MultiplierScanOptions o;
    o.n = std::max(32, cfg.solver.n);
    o.magnitudes = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
    o.seed = cfg.seed;
    emit(horizontal_multiplier_scan(o));
    std::ostringstream csv;
    csv << std::setprecision(17) << "n,ratio\n";
    const std::vector<int> res = {16, 32, 64, 128, 256};
    const auto growth = projection_linf_growth(res);
    for (std::size_t i = 0; i < res.size(); ++i) csv << res[i] << "," << growth[i] << "\n";
    write_file_atomic(out / "projection_linf_growth.csv", csv.str());
    std::cout << "projection_linf_growth " << growth.front() << " -> " << growth.back() << "\n";
  }

  void interpolation() {
    LocalScanOptions o;
    o.radii = {0.05, 0.1, 0.2, 0.4};
    o.seed = cfg.seed;
    emit(interpolation_ratio(grid(), o));
    emit(log_riesz_ratio(std::max(32, cfg.solver.n), o));
  }

  void nonlinear() {
    NonlinearScanOptions o;
    o.times = {1e-3, 1e-2, 0.1, 1.0};
    o.seed = cfg.seed;
    o.p = p();
    for (const auto& r : nonlinear_estimate_scan(grid(), o)) emit(r);
  }

  void recursion() {
    const RecursionParams& r = cfg.recursion;
    try {
      const RecursionCheck c = recursion_bound_check(r.a0, r.c1, r.c2, r.steps);
      std::ostringstream csv;
      csv << std::setprecision(17) << "m,a_m,bound\n";
      for (std::size_t m = 0; m < c.sequence.size(); ++m) csv << m << "," << c.sequence[m] << "," << c.bound << "\n";
      write_file_atomic(out / "recursion.csv", csv.str());
      hard(c.ok, "recursion: a_m < 2 a0 / (1 - c2) = " + std::to_string(c.bound));
    } catch (const ContractViolation& e) {
      hard(false, std::string("recursion: ") + e.what());
    }
  }
};

int cmd_verify(const std::string& suite, const std::string& config, const std::string& output) {
  static const std::vector<std::string> suites = {"kernel",     "young",         "semigroup", "resolvent",
                                                  "multiplier", "interpolation", "nonlinear", "recursion"};
  if (suite != "all" && std::find(suites.begin(), suites.end(), suite) == suites.end())
    return report_error("usage", "unknown suite '" + suite + "'", kUsage);
  Verifier v{config_from(config), {}};
  v.out = output.empty() ? v.cfg.output_dir : fs::path(output);
  for (const auto& name : suites) {
    if (suite != "all" && suite != name) continue;
    if (name == "kernel") v.kernel();
    if (name == "young") v.young();
    if (name == "semigroup") v.semigroup();
    if (name == "resolvent") v.resolvent();
    if (name == "multiplier") v.multiplier();
    if (name == "interpolation") v.interpolation();
    if (name == "nonlinear") v.nonlinear();
    if (name == "recursion") v.recursion();
  }
  if (v.failed) return report_error("assertion", "a hard check of suite '" + suite + "' failed", kFailed);
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_norms(const std::string& path, const std::string& q_text, const std::string& p_text) {
  double q = 0.0, p = 0.0;
  try {
    q = parse_exponent(q_text);
    p = parse_exponent(p_text);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  const Snapshot s = read_snapshot(path);
  const PhysicalField values = inverse_transform(s.field);
  std::cout << std::setprecision(17);
  std::cout << "time " << s.time << "\n";
  std::cout << "mixed_norm " << norm_anisotropic(values, q, p) << "\n";
  std::cout << "l2_norm " << l2_norm(s.field) << "\n";
  std::cout << "sup_norm " << norm_anisotropic(values, kInf, kInf) << "\n";
  return kOk;
}

int cmd_spectrum(const std::string& config, const std::string& output) {
  const RunConfig cfg = config_from(config);
  const StokesOperator op(cfg.solver.grid());
  std::ostringstream csv;
  csv << std::setprecision(17) << "m,n,index,re,im,subspace\n";
  for (auto sub : {Subspace::full, Subspace::solenoidal}) {
    const SpectralBoundReport r = op.spectral_bound(sub);
    const char* name = sub == Subspace::full ? "full" : "solenoidal";
    for (const auto& mode : r.modes)
      for (std::size_t i = 0; i < mode.eigenvalues.size(); ++i)
        csv << mode.m << "," << mode.n << "," << i << "," << mode.eigenvalues[i].real() << ","
            << mode.eigenvalues[i].imag() << "," << name << "\n";
    std::cout << std::setprecision(17) << "spectral_bound " << name << " " << r.bound << "\n";
  }
  write_file_atomic((output.empty() ? cfg.output_dir : fs::path(output)) / "spectrum.csv", csv.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hydrostatic Stokes workbench"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the split mild solver and write diagnostics");
  simulate->add_option("--config", sim.config, "Configuration file");
  simulate->add_option("--init", sim.init, "single-mode | random-decay | rough-perturbation");
  simulate->add_option("--amplitude", sim.amplitude, "Norm of the initial data");
  simulate->add_option("--snapshot-every", sim.snapshot_every, "Snapshot cadence in steps (0: final only)");
  simulate->add_option("--output", sim.output, "Output directory (overrides output.dir)");

  std::string suite, verify_config, verify_output;
  auto* verify = app.add_subcommand("verify", "Run an estimate suite and write scan reports");
  verify->add_option("suite", suite, "kernel | young | semigroup | resolvent | multiplier | interpolation | "
                                     "nonlinear | recursion | all")
      ->required();
  verify->add_option("--config", verify_config, "Configuration file");
  verify->add_option("--output", verify_output, "Output directory (overrides output.dir)");

  std::string snapshot, q_text = "inf", p_text = "4";
  auto* norms = app.add_subcommand("norms", "Print norms of a snapshot");
  norms->add_option("snapshot", snapshot, "Snapshot file")->required();
  norms->add_option("--q", q_text, "Horizontal exponent (number or inf)");
  norms->add_option("--p", p_text, "Vertical exponent (number or inf)");

  std::string spec_config, spec_output;
  auto* spectrum = app.add_subcommand("spectrum", "Write the eigenvalues of every mode block");
  spectrum->add_option("--config", spec_config, "Configuration file");
  spectrum->add_option("--output", spec_output, "Output directory (overrides output.dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return report_error("usage", e.what(), kUsage);
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*verify) return cmd_verify(suite, verify_config, verify_output);
    if (*norms) return cmd_norms(snapshot, q_text, p_text);
    if (*spectrum) return cmd_spectrum(spec_config, spec_output);
  } catch (const ConfigError& e) {
    return report_error("config", e.what(), kUsage);
  } catch (const FormatError& e) {
    return report_error("format", e.what(), kUsage);
  } catch (const IterationDiverged& e) {
    return report_error("diverged", e.what(), kDiverged);
  } catch (const BlowUpError& e) {
    return report_error("blowup", e.what(), kDiverged);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kFailed);
  }
  return kOk;
}
