#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "hydrostokes/errors.hpp"
#include "hydrostokes/io.hpp"
#include "hydrostokes/norms.hpp"
#include "hydrostokes/projection.hpp"
#include "support.hpp"

using namespace hydrostokes;
using namespace hydrostokes::testing;
namespace fs = std::filesystem;

namespace {

template <class T>
void append(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));  // the test host is little-endian
  out.append(buf, sizeof(T));
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hydrostokes_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Config, ParsesEveryKey) {
  const RunConfig c = parse_config(R"(# comment line
grid.n = 12
grid.k = 10
grid.h = 0.5
norm.p = 5   # trailing comment
time.dt = 0.002
time.horizon = 0.2
split.delta = 0.003
split.eps0 = 0.04
picard.max_iter = 9
picard.tol = 1e-9
dealias = false
reproject = true
seed = 42
output.dir = out/run
output.snapshot_every = 5
init.kind = rough-perturbation
init.amplitude = 0.5
init.decay = 2.5
init.band = 4
init.rough = 0.02
recursion.a0 = 0.05
recursion.c1 = 2
recursion.c2 = 0.5
recursion.steps = 7

)");
  EXPECT_EQ(c.solver.n, 12);
  EXPECT_EQ(c.solver.k, 10);
  EXPECT_EQ(c.solver.h, 0.5);
  EXPECT_EQ(c.solver.p, 5.0);
  EXPECT_EQ(c.solver.dt, 0.002);
  EXPECT_EQ(c.solver.horizon, 0.2);
  EXPECT_EQ(c.solver.delta, 0.003);
  EXPECT_EQ(c.solver.eps0, 0.04);
  EXPECT_EQ(c.solver.max_iter, 9);
  EXPECT_EQ(c.solver.tol, 1e-9);
  EXPECT_FALSE(c.solver.dealias);
  EXPECT_TRUE(c.solver.reproject);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.output_dir, fs::path("out/run"));
  EXPECT_EQ(c.snapshot_every, 5);
  EXPECT_EQ(c.init.kind, InitKind::rough_perturbation);
  EXPECT_EQ(c.init.amplitude, 0.5);
  EXPECT_EQ(c.init.decay, 2.5);
  EXPECT_EQ(c.init.band, 4);
  EXPECT_EQ(c.init.rough, 0.02);
  EXPECT_EQ(c.recursion.a0, 0.05);
  EXPECT_EQ(c.recursion.c1, 2.0);
  EXPECT_EQ(c.recursion.c2, 0.5);
  EXPECT_EQ(c.recursion.steps, 7);
}

TEST(Config, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("");
  EXPECT_EQ(c.solver.n, SolverConfig{}.n);
  EXPECT_FALSE(c.solver.eps0.has_value());
}

TEST(Config, RejectsBadInput) {
  for (const char* text : {"grid.m = 4", "grid.n", "grid.n = four", "grid.n = 4.5", "norm.p = 3", "norm.p = 2.5",
                           "time.dt = 1\ntime.horizon = 0.5", "dealias = maybe", "split.delta = -1",
                           "init.kind = fractal", "grid.n = 4 4"}) {
    EXPECT_THROW(parse_config(text), ConfigError) << text;
  }
  try {
    parse_config("\n\ngrid.z = 1");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("grid.z"), std::string::npos);
  }
  EXPECT_THROW(load_config(scratch("missing.cfg")), ConfigError);
}

TEST(Config, InitKindNamesRoundTrip) {
  for (InitKind k : {InitKind::single_mode, InitKind::random_decay, InitKind::rough_perturbation})
    EXPECT_EQ(parse_init_kind(init_kind_name(k)), k);
  EXPECT_THROW(parse_init_kind("single_mode"), ConfigError);
}

TEST(InitialData, IsSolenoidalWithTheRequestedNorm) {
  RunConfig c = parse_config("grid.n = 8\ngrid.k = 8\ninit.amplitude = 0.3");
  for (InitKind k : {InitKind::random_decay, InitKind::rough_perturbation}) {
    c.init.kind = k;
    const SpectralField a = make_initial_data(c);
    EXPECT_LE(check_solenoidal(a), 1e-13);
    if (k == InitKind::random_decay) EXPECT_NEAR(mixed_norm(a, kInf, c.solver.p), 0.3, 1e-14);
  }
  c.init.kind = InitKind::single_mode;
  const SpectralField s = make_initial_data(c);
  EXPECT_NEAR(evaluate(s, 1, 0.25, 0.0, 0.0), 0.3, 1e-14);
}

TEST(Snapshot, EncodingMatchesTheByteLayout) {
  const Grid g(4, 2, 1.5);
  SpectralField f(g, 2);
  f(0, 1, 2, 1) = Complex(1.25, -3.5);
  f(1, 3, 0, 0) = Complex(-0.0, 7.0);
  std::string expected("HSTK1", 5);
  append<std::uint32_t>(expected, 1);
  append<std::uint32_t>(expected, 2);
  append<std::uint32_t>(expected, 4);
  append<std::uint32_t>(expected, 2);
  append<double>(expected, 1.5);
  append<double>(expected, 0.125);
  for (int c = 0; c < 2; ++c)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        for (int k = 0; k < 2; ++k) {
          append<double>(expected, f(c, m, n, k).real());
          append<double>(expected, f(c, m, n, k).imag());
        }
  EXPECT_EQ(encode_snapshot(f, 0.125), expected);
}

TEST(Snapshot, RoundTripIsBitExact) {
  const Grid g(8, 6, 0.7);
  const SpectralField f = dense_field(g, 2, 3);
  const fs::path path = scratch("round.hstk");
  write_snapshot(path, f, 0.0625);
  const Snapshot s = read_snapshot(path);
  EXPECT_EQ(s.time, 0.0625);
  EXPECT_TRUE(s.field.grid() == g);
  ASSERT_EQ(s.field.size(), f.size());
  EXPECT_EQ(std::memcmp(s.field.data().data(), f.data().data(), f.size() * sizeof(Complex)), 0);
  EXPECT_EQ(mixed_norm(s.field, kInf, 4.0), mixed_norm(f, kInf, 4.0));
  EXPECT_EQ(encode_snapshot(s.field, s.time), encode_snapshot(f, 0.0625));
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(Snapshot, RejectsCorruptFiles) {
  const Grid g(4, 2, 1.0);
  const std::string good = encode_snapshot(dense_field(g, 2, 1), 0.0);
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_snapshot(bad_magic), FormatError);
  std::string bad_version = good;
  bad_version[5] = 2;
  EXPECT_THROW(decode_snapshot(bad_version), FormatError);
  EXPECT_THROW(decode_snapshot(good.substr(0, good.size() - 1)), FormatError);
  EXPECT_THROW(decode_snapshot(good + "x"), FormatError);
  EXPECT_THROW(decode_snapshot(good.substr(0, 12)), FormatError);
  std::string odd_n = good;
  odd_n[13] = 3;
  EXPECT_THROW(decode_snapshot(odd_n), FormatError);
  EXPECT_THROW(read_snapshot(scratch("nope.hstk")), FormatError);
}

TEST(Snapshot, NodalConstantHasUnitNorms) {
  const Grid g(8, 8, 1.0);
  PhysicalField ones(g, 2);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int z = 0; z < 8; ++z) ones(0, i, j, z) = 1.0;
  const fs::path path = scratch("ones.hstk");
  write_snapshot(path, forward_transform(ones), 0.0);
  const Snapshot s = read_snapshot(path);
  EXPECT_NEAR(mixed_norm(s.field, kInf, 4.0), 1.0, 1e-14);
  EXPECT_NEAR(mixed_norm(s.field, 2.0, 2.0), 1.0, 1e-14);
}

TEST(AtomicWrite, ReplacesContents) {
  const fs::path path = scratch("atomic.txt");
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "second");
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
  const fs::path nested = scratch("nested/dir/file.txt");
  fs::remove_all(scratch("nested"));
  write_file_atomic(nested, "x");
  EXPECT_TRUE(fs::exists(nested));
}

TEST(DiagnosticsCsv, HeaderAndRows) {
  Trajectory t;
  t.times = {0.0, 0.5};
  t.diagnostics.energy = {1.0, 0.5};
  t.diagnostics.sol_drift = {0.0, 1e-17};
  t.diagnostics.norm_inf_p = {2.0, 1.0};
  t.diagnostics.t_sqrt_grad_norm = {0.0, 0.25};
  t.diagnostics.residual = {0.0, 1e-3};
  const std::string csv = diagnostics_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,energy,sol_drift,norm_inf_p,t_sqrt_grad_norm,residual");
  EXPECT_NE(csv.find("\n0.5,0.5,1.0000000000000001e-17,1,0.25,0.001\n"), std::string::npos) << csv;
}

TEST(InitialData, BandMustFitTheGrid) {
  RunConfig c = parse_config("grid.n = 4\ngrid.k = 4\ninit.band = 3");
  EXPECT_THROW(make_initial_data(c), ConfigError);
  c.init.kind = InitKind::single_mode;
  EXPECT_NO_THROW(make_initial_data(c));
}
