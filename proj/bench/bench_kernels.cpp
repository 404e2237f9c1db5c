// OpenMP kernels against their serial references: Hausdorff distance (a
// staircase-sized polyline against a densely sampled curve),
// admissible-rotation scan and panel clash test.

#include "rigidfold/foldsim.hpp"
#include "rigidfold/geometry.hpp"
#include "rigidfold/parallel_repeating.hpp"
#include "rigidfold/pattern_io.hpp"
#include "rigidfold/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace rigidfold;

namespace {

std::vector<Vec3> helix(int n, double phase) {
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) {
    const double t = 6.0 * i / (n - 1);
    pts.emplace_back(std::cos(t + phase), std::sin(t), 0.1 * t);
  }
  return pts;
}

const ParallelDesign& reference() {
  static const ParallelDesign d = build_pattern(to_parallel_spec(parse_design_spec(demo_spec("fig5"))));
  return d;
}

void BM_Hausdorff(benchmark::State& state) {
  const auto a = helix(int(state.range(0)), 0.0), b = helix(2001, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(a, b));
}

void BM_HausdorffSerial(benchmark::State& state) {
  const auto a = helix(int(state.range(0)), 0.0), b = helix(2001, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_serial(a, b));
}

void BM_ThetaScan(benchmark::State& state) {
  const PolyCurve f = builtin_curve("fig3-parabola", int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search_theta(f, 60.0 * kPi / 180.0));
}

void BM_ThetaScanSerial(benchmark::State& state) {
  const PolyCurve f = builtin_curve("fig3-parabola", int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search_theta_serial(f, 60.0 * kPi / 180.0));
}

void BM_Clash(benchmark::State& state) {
  const ParallelDesign& d = reference();
  const FoldedState& s = d.trajectory->states.back();
  for (auto _ : state) benchmark::DoNotOptimize(clash_test(d.pattern, s));
}

void BM_ClashSerial(benchmark::State& state) {
  const ParallelDesign& d = reference();
  const FoldedState& s = d.trajectory->states.back();
  for (auto _ : state) benchmark::DoNotOptimize(clash_test_serial(d.pattern, s));
}

}  // namespace

BENCHMARK(BM_Hausdorff)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HausdorffSerial)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaScan)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaScanSerial)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Clash)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ClashSerial)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
