#include <benchmark/benchmark.h>

#include "hydrostokes/expm.hpp"
#include "hydrostokes/generators.hpp"
#include "hydrostokes/nonlinear.hpp"
#include "hydrostokes/projection.hpp"
#include "hydrostokes/stokes.hpp"
#include "hydrostokes/transforms.hpp"

using namespace hydrostokes;

namespace {

void BM_Expm(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ModeOperator op = build_mode_operator(2 * 3.141592653589793, 0.0, Grid(8, k, 1.0));
  const Eigen::MatrixXd m = 0.01 * op.parallel_block();
  for (auto _ : state) benchmark::DoNotOptimize(expm(m));
}
BENCHMARK(BM_Expm)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_Phi1(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ModeOperator op = build_mode_operator(2 * 3.141592653589793, 0.0, Grid(8, k, 1.0));
  const Eigen::MatrixXd m = op.parallel_block();
  for (auto _ : state) benchmark::DoNotOptimize(phi1(m, 0.01));
}
BENCHMARK(BM_Phi1)->Arg(16)->Arg(64);

// Cached: every mode block exponential is reused after the first call.
void BM_SemigroupCached(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n, n, 1.0);
  const StokesOperator op(g);
  const SpectralField v = random_field(g, 1);
  op.semigroup(0.01, v);
  for (auto _ : state) benchmark::DoNotOptimize(op.semigroup(0.01, v));
}
BENCHMARK(BM_SemigroupCached)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SemigroupCold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n, n, 1.0);
  const SpectralField v = random_field(g, 1);
  for (auto _ : state) {
    const StokesOperator op(g);
    benchmark::DoNotOptimize(op.semigroup(0.01, v));
  }
}
BENCHMARK(BM_SemigroupCold)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Advection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n, n, 1.0);
  NonlinearWorkspace ws(g);
  const SpectralField v = random_field(g, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ws.advection(v, v));
}
BENCHMARK(BM_Advection)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ForwardInverseTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n, n, 1.0);
  const PhysicalField f = inverse_transform(random_field(g, 3));
  for (auto _ : state) benchmark::DoNotOptimize(inverse_transform(forward_transform(f)));
}
BENCHMARK(BM_ForwardInverseTransform)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_Projection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n, n, 1.0);
  const SpectralField v = random_field(g, 4, {.solenoidal = false});
  for (auto _ : state) benchmark::DoNotOptimize(project_hydrostatic(v));
}
BENCHMARK(BM_Projection)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
