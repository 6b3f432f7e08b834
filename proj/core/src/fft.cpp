#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace hydrostokes::detail {
namespace {

using PlanKey = std::tuple<int, int, int, int>;  // kind tag, size, howmany, direction/kind

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::map<PlanKey, fftw_plan>& plan_table() {
  static std::map<PlanKey, fftw_plan> table;
  return table;
}

fftw_plan dft_plan(int n, int howmany, Direction dir) {
  const PlanKey key{0, n, howmany, dir == Direction::forward ? 0 : 1};
  std::lock_guard lock(planner_mutex());
  auto& table = plan_table();
  if (auto it = table.find(key); it != table.end()) return it->second;
  std::vector<fftw_complex> scratch(static_cast<std::size_t>(n) * n * howmany);
  const int dims[2] = {n, n};
  fftw_plan plan = fftw_plan_many_dft(2, dims, howmany, scratch.data(), nullptr, howmany, 1,
                                      scratch.data(), nullptr, howmany, 1,
                                      dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
  table.emplace(key, plan);
  return plan;
}

fftw_r2r_kind to_fftw(Trig kind) {
  switch (kind) {
    case Trig::dst4: return FFTW_RODFT11;
    case Trig::dct4: return FFTW_REDFT11;
    case Trig::dst2: return FFTW_RODFT10;
    case Trig::dct3: return FFTW_REDFT01;
  }
  return FFTW_RODFT11;
}

fftw_plan r2r_plan(int len, int howmany, Trig kind) {
  const PlanKey key{1, len, howmany, static_cast<int>(kind)};
  std::lock_guard lock(planner_mutex());
  auto& table = plan_table();
  if (auto it = table.find(key); it != table.end()) return it->second;
  std::vector<double> scratch(static_cast<std::size_t>(len) * howmany);
  const fftw_r2r_kind k = to_fftw(kind);
  fftw_plan plan = fftw_plan_many_r2r(1, &len, howmany, scratch.data(), nullptr, 1, len,
                                      scratch.data(), nullptr, 1, len, &k,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
  table.emplace(key, plan);
  return plan;
}

}  // namespace

void dft2_interleaved(std::complex<double>* data, int n, int howmany, Direction dir) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(dft_plan(n, howmany, dir), buf, buf);
}

void r2r_columns(double* data, int len, int howmany, Trig kind) {
  fftw_execute_r2r(r2r_plan(len, howmany, kind), data, data);
}

}  // namespace hydrostokes::detail
