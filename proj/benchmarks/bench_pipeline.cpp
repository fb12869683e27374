#include <benchmark/benchmark.h>

#include <memory>

#include "thincascade/verification.hpp"

using namespace thincascade;

static void BM_MappedMesh(benchmark::State& state) {
  const double eps = 0.05;
  const auto outline = scaled_outline(geometry_presets::widening(), eps);
  for (auto _ : state) benchmark::DoNotOptimize(mapped_triangulate(outline, eps / state.range(0)));
}
BENCHMARK(BM_MappedMesh)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ReferenceSolve(benchmark::State& state) {
  ReferenceOptions o;
  o.n_across = static_cast<int>(state.range(0));
  o.self_check = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(reference_solve(problem_presets::tp1(), geometry_presets::widening(), 0.05, o));
}
BENCHMARK(BM_ReferenceSolve)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Omega2(benchmark::State& state) {
  const auto g = geometry_presets::cascade();
  const auto load = effective_rhs(problem_presets::tp2(), g);
  for (auto _ : state) benchmark::DoNotOptimize(solve_omega2(load, g));
}
BENCHMARK(BM_Omega2);

static void BM_FrakN0(benchmark::State& state) {
  const auto g = geometry_presets::widening();
  const auto d = make_inner_domain(g, default_truncation_length(g), default_inner_target_h(g) * 12.0 / state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_frak_N0(d));
}
BENCHMARK(BM_FrakN0)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(problem_presets::tp2(), geometry_presets::widening()));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

static void BM_CompositeEval(benchmark::State& state) {
  auto p = std::make_shared<const Pipeline>(run_pipeline(problem_presets::tp1(), geometry_presets::widening()));
  const double eps = 0.05;
  const auto U = assemble_composite(1, eps, p);
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(composite_eval(U, {x, 0.1 * eps}));
    x = x > 0.99 ? -1.0 : x + 1e-3;
  }
}
BENCHMARK(BM_CompositeEval);

BENCHMARK_MAIN();
