// Serial reference vs OpenMP kernels on the rectangle scan and tabulation.
#include <benchmark/benchmark.h>

#include "shockcop/copulas.hpp"
#include "shockcop/generators.hpp"
#include "shockcop/kernels.hpp"

namespace {

using namespace shockcop;

CopulaSpec example_copula() {
  const DistFn fz = point_mass(0.6931471805599453);
  return CopulaSpec::maxmin(build_phi(discretize(exponential(1.0), 2000, 0.0, 10.0), fz),
                            build_chi(discretize(exponential(3.0), 2000, 0.0, 10.0), fz));
}

template <bool Parallel>
void BM_Tabulate(benchmark::State& state) {
  const CopulaSpec c = example_copula();
  const std::vector<double> us = unit_grid(static_cast<std::size_t>(state.range(0)));
  const auto f = [&c](double u, double v) { return c(u, v); };
  for (auto _ : state) {
    GridTable t = Parallel ? parallel::tabulate(f, us, us) : serial::tabulate(f, us, us);
    benchmark::DoNotOptimize(t.values.data());
  }
}

template <bool Parallel>
void BM_Scan(benchmark::State& state) {
  const CopulaSpec c = example_copula();
  const std::vector<double> us = unit_grid(static_cast<std::size_t>(state.range(0)));
  const GridTable t = parallel::tabulate([&c](double u, double v) { return c(u, v); }, us, us);
  const RectForm form{&t, &t, &t, &t};
  for (auto _ : state) {
    RectMin m = Parallel ? parallel::scan_rectangles(form) : serial::scan_rectangles(form);
    benchmark::DoNotOptimize(m.value);
  }
}

}  // namespace

BENCHMARK(BM_Tabulate<false>)->Arg(101)->Arg(401);
BENCHMARK(BM_Tabulate<true>)->Arg(101)->Arg(401);
BENCHMARK(BM_Scan<false>)->Arg(31)->Arg(51);
BENCHMARK(BM_Scan<true>)->Arg(31)->Arg(51)->Arg(101)->Arg(201);

BENCHMARK_MAIN();
