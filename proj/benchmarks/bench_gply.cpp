#include <benchmark/benchmark.h>

#include "gply/amplitude.hpp"
#include "gply/bethe.hpp"
#include "gply/diagnostics.hpp"
#include "gply/zeros.hpp"

using namespace gply;

namespace {

const InitialState& dw2() {
  static const InitialState st = build_initial_state(StateKind::domain_wall, 8, 2);
  return st;
}

GaussRat q_of(int64_t which) { return which == 0 ? GaussRat(2) : GaussRat::parse("3/5+4/5i"); }

}  // namespace

static void BM_AmplitudeExact(benchmark::State& state) {
  CircuitParams p = CircuitParams::exact(q_of(state.range(1)), 8, 2);
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(loschmidt_exact(dw2(), p, n, Projection::zero_momentum));
}
BENCHMARK(BM_AmplitudeExact)->ArgsProduct({{10, 25, 50}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_FindZeros(benchmark::State& state) {
  CircuitParams p = CircuitParams::exact(q_of(state.range(1)), 8, 2);
  AmplitudeResult r = loschmidt_exact(dw2(), p, static_cast<unsigned>(state.range(0)), Projection::zero_momentum);
  DensePoly P = numerator_for_zeros(r).poly;
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros(P));
  state.counters["degree"] = P.degree();
}
BENCHMARK(BM_FindZeros)->ArgsProduct({{10, 25}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_LoschmidtNumeric(benchmark::State& state) {
  mp::ScopedPrecision prec(static_cast<unsigned>(state.range(1)));
  CircuitParams p = CircuitParams::exact(GaussRat(2), 8, 2);
  const mp::Complex x0 = mp::make_complex(0.41, 0.29);
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(loschmidt_numeric(dw2(), p, x0, n));
}
BENCHMARK(BM_LoschmidtNumeric)->ArgsProduct({{50, 200}, {30, 128}})->Unit(benchmark::kMillisecond);

static void BM_SpectralDecomposition(benchmark::State& state) {
  mp::ScopedPrecision prec(static_cast<unsigned>(state.range(0)));
  CircuitParams p = CircuitParams::exact(GaussRat(2), 8, 2);
  const mp::Complex x0 = mp::make_complex(0.41, 0.29);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decomposition(dw2(), p, x0));
}
BENCHMARK(BM_SpectralDecomposition)->Arg(30)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_BetheM2(benchmark::State& state) {
  mp::ScopedPrecision prec(60);
  CircuitParams p = CircuitParams::exact(GaussRat(2), static_cast<int>(state.range(0)), 2);
  const mp::Complex x = mp::make_complex(1.0 / 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_bae_m2(p, x));
}
BENCHMARK(BM_BetheM2)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_EquimodularScan(benchmark::State& state) {
  ScanGrid grid;
  grid.n_radial = 5;
  grid.n_angular = 16;
  ScanOptions opts;
  opts.digits = 40;
  CircuitParams p = CircuitParams::exact(GaussRat(2), static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(equimodular_scan(p, grid, opts));
}
BENCHMARK(BM_EquimodularScan)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
