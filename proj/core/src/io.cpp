#include "hydrostokes/io.hpp"

#include <bit>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/generators.hpp"
#include "hydrostokes/norms.hpp"

namespace hydrostokes {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || errno == ERANGE || std::isnan(x))
    throw ConfigError("config: " + key + ": not a number: '" + value + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError("config: " + key + ": not an integer: '" + value + "'");
  return x;
}

int to_int(const std::string& key, const std::string& value) {
  const long long x = to_integer(key, value);
  if (x < -(1LL << 30) || x > (1LL << 30)) throw ConfigError("config: " + key + ": out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("config: " + key + ": not a boolean: '" + value + "'");
}

void put_u32(std::string& out, std::uint32_t x) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xffu));
}

void put_f64(std::string& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint64_t raw(int width) {
    if (pos_ + width > bytes_.size()) throw FormatError("snapshot: truncated file");
    std::uint64_t x = 0;
    for (int b = 0; b < width; ++b)
      x |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + b])) << (8 * b);
    pos_ += width;
    return x;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
  double f64() { return std::bit_cast<double>(raw(8)); }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void skip(std::size_t n) { pos_ += n; }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(std::string(what) + ": cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

InitKind parse_init_kind(const std::string& name) {
  if (name == "single-mode") return InitKind::single_mode;
  if (name == "random-decay") return InitKind::random_decay;
  if (name == "rough-perturbation") return InitKind::rough_perturbation;
  throw ConfigError("unknown initial data '" + name + "' (single-mode, random-decay, rough-perturbation)");
}

const char* init_kind_name(InitKind kind) {
  switch (kind) {
    case InitKind::single_mode: return "single-mode";
    case InitKind::random_decay: return "random-decay";
    case InitKind::rough_perturbation: return "rough-perturbation";
  }
  return "";
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  SolverConfig& s = cfg.solver;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "grid.n") s.n = to_int(key, value);
    else if (key == "grid.k") s.k = to_int(key, value);
    else if (key == "grid.h") s.h = to_double(key, value);
    else if (key == "norm.p") s.p = to_double(key, value);
    else if (key == "time.dt") s.dt = to_double(key, value);
    else if (key == "time.horizon") s.horizon = to_double(key, value);
    else if (key == "split.delta") s.delta = to_double(key, value);
    else if (key == "split.eps0") s.eps0 = to_double(key, value);
    else if (key == "picard.max_iter") s.max_iter = to_int(key, value);
    else if (key == "picard.tol") s.tol = to_double(key, value);
    else if (key == "dealias") s.dealias = to_bool(key, value);
    else if (key == "reproject") s.reproject = to_bool(key, value);
    else if (key == "seed") {
      const long long x = to_integer(key, value);
      if (x < 0) throw ConfigError("config: seed must be nonnegative");
      cfg.seed = static_cast<std::uint64_t>(x);
    } else if (key == "output.dir") {
      if (value.empty()) throw ConfigError("config: output.dir is empty");
      cfg.output_dir = value;
    } else if (key == "output.snapshot_every") cfg.snapshot_every = to_int(key, value);
    else if (key == "init.kind") cfg.init.kind = parse_init_kind(value);
    else if (key == "init.amplitude") cfg.init.amplitude = to_double(key, value);
    else if (key == "init.decay") cfg.init.decay = to_double(key, value);
    else if (key == "init.band") cfg.init.band = to_int(key, value);
    else if (key == "init.rough") cfg.init.rough = to_double(key, value);
    else if (key == "recursion.a0") cfg.recursion.a0 = to_double(key, value);
    else if (key == "recursion.c1") cfg.recursion.c1 = to_double(key, value);
    else if (key == "recursion.c2") cfg.recursion.c2 = to_double(key, value);
    else if (key == "recursion.steps") cfg.recursion.steps = to_int(key, value);
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  s.validate();
  if (cfg.snapshot_every < 0) throw ConfigError("config: output.snapshot_every must be nonnegative");
  if (!(cfg.init.amplitude >= 0.0) || !std::isfinite(cfg.init.amplitude))
    throw ConfigError("config: init.amplitude must be nonnegative");
  if (!(cfg.init.rough >= 0.0) || !std::isfinite(cfg.init.rough))
    throw ConfigError("config: init.rough must be nonnegative");
  if (cfg.init.band < 1) throw ConfigError("config: init.band must be at least 1");
  if (cfg.recursion.steps < 0) throw ConfigError("config: recursion.steps must be nonnegative");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SpectralField make_initial_data(const RunConfig& config) {
  const Grid grid = config.solver.grid();
  const double p = config.solver.p;
  const InitSpec& init = config.init;
  if (init.kind == InitKind::single_mode) return single_mode(grid, init.amplitude);
  if (init.band > grid.n() / 2 - 1) throw ConfigError("config: init.band must not exceed grid.n/2 - 1");
  auto scaled = [p](SpectralField f, double target) {
    const double norm = mixed_norm(f, kInf, p);
    if (norm > 0.0) f *= target / norm;
    return f;
  };
  SpectralField a = scaled(random_field(grid, config.seed,
                                        {.decay = init.decay, .max_h = init.band, .max_k = std::min(grid.k(), 6)}),
                           init.amplitude);
  if (init.kind == InitKind::rough_perturbation) a += scaled(rough_field(grid, config.seed + 1), init.rough);
  return a;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw FormatError("write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string encode_snapshot(const SpectralField& field, double time) {
  const Grid& g = field.grid();
  std::string out(kSnapshotMagic, sizeof kSnapshotMagic);
  put_u32(out, kSnapshotVersion);
  put_u32(out, static_cast<std::uint32_t>(field.ncomp()));
  put_u32(out, static_cast<std::uint32_t>(g.n()));
  put_u32(out, static_cast<std::uint32_t>(g.k()));
  put_f64(out, g.h());
  put_f64(out, time);
  out.reserve(out.size() + 16 * field.size());
  for (const Complex& z : field.data()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
  if (bytes.size() < sizeof kSnapshotMagic || std::memcmp(bytes.data(), kSnapshotMagic, sizeof kSnapshotMagic) != 0)
    throw FormatError("snapshot: bad magic");
  Reader r(bytes);
  r.skip(sizeof kSnapshotMagic);
  const std::uint32_t version = r.u32();
  if (version != kSnapshotVersion)
    throw FormatError("snapshot: unsupported version " + std::to_string(version));
  const std::uint32_t ncomp = r.u32();
  const std::uint32_t n = r.u32();
  const std::uint32_t k = r.u32();
  const double h = r.f64();
  const double time = r.f64();
  if (ncomp < 1 || ncomp > 2 || n < 2 || n % 2 != 0 || n > 4096 || k < 1 || k > 4096 || !(h > 0.0))
    throw FormatError("snapshot: invalid header");
  SpectralField field(Grid(static_cast<int>(n), static_cast<int>(k), h), static_cast<int>(ncomp));
  if (r.remaining() != 16 * field.size()) throw FormatError("snapshot: payload size does not match the header");
  for (Complex& z : field.data()) {
    const double re = r.f64();
    const double im = r.f64();
    z = Complex(re, im);
  }
  return {std::move(field), time};
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time) {
  write_file_atomic(path, encode_snapshot(field, time));
}

Snapshot read_snapshot(const std::filesystem::path& path) { return decode_snapshot(read_file(path, "snapshot")); }

std::string diagnostics_csv(const Trajectory& traj) {
  const Diagnostics& d = traj.diagnostics;
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t,energy,sol_drift,norm_inf_p,t_sqrt_grad_norm,residual\n";
  for (std::size_t n = 0; n < traj.times.size(); ++n) {
    os << traj.times[n] << "," << d.energy.at(n) << "," << d.sol_drift.at(n) << "," << d.norm_inf_p.at(n) << ","
       << d.t_sqrt_grad_norm.at(n) << "," << d.residual.at(n) << "\n";
  }
  return os.str();
}

}  // namespace hydrostokes
