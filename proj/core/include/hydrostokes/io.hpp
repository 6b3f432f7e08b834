#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "hydrostokes/fields.hpp"
#include "hydrostokes/mild_solver.hpp"

namespace hydrostokes {

enum class InitKind { single_mode, random_decay, rough_perturbation };

/// Named initial data. `amplitude` is the L^inf_H L^p_z norm of the field
/// (the sin amplitude for single-mode); rough-perturbation adds a rough part
/// of norm `rough` to a random-decay field.
struct InitSpec {
  InitKind kind = InitKind::random_decay;
  double amplitude = 1.0;
  double decay = 3.0;
  int band = 3;
  double rough = 0.01;
};

struct RecursionParams {
  double a0 = 0.1;
  double c1 = 1.0;
  double c2 = 0.25;
  int steps = 50;
};

struct RunConfig {
  SolverConfig solver;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  int snapshot_every = 0;  ///< 0 writes only the final state
  InitSpec init;
  RecursionParams recursion;
};

/// Parses `key = value` lines with `#` comments. Throws ConfigError on
/// unknown keys, malformed values or a configuration failing validation.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

InitKind parse_init_kind(const std::string& name);
const char* init_kind_name(InitKind kind);

/// Initial data on the solver grid, solenoidal.
SpectralField make_initial_data(const RunConfig& config);

/// Writes `contents` next to `path` and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

struct Snapshot {
  SpectralField field;
  double time = 0.0;
};

inline constexpr char kSnapshotMagic[5] = {'H', 'S', 'T', 'K', '1'};
inline constexpr std::uint32_t kSnapshotVersion = 1;

/// Binary snapshot: magic, u32 version, ncomp, N, K, f64 h, time, then the
/// coefficients as interleaved (re, im) in storage order, all little-endian.
std::string encode_snapshot(const SpectralField& field, double time);
Snapshot decode_snapshot(const std::string& bytes);
void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time);
/// Throws FormatError on a bad magic, version or size.
Snapshot read_snapshot(const std::filesystem::path& path);

/// CSV with columns t, energy, sol_drift, norm_inf_p, t_sqrt_grad_norm, residual.
std::string diagnostics_csv(const Trajectory& traj);

}  // namespace hydrostokes
