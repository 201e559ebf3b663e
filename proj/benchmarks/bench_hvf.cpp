#include <benchmark/benchmark.h>

#include <random>

#include <hvf/energy.hpp>
#include <hvf/flow.hpp>

namespace {

using namespace hvf;

BundlePoint unit_point(const Manifold& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Vec p = m.random_point(rng);
  return {p, m.random_tangent(p, rng).normalized()};
}

// range(0): 0 closed form, 1 Koszul oracle
void BM_Connection(benchmark::State& state) {
  auto s3 = make_sphere(3);
  auto w = make_example58(s3);
  const BundlePoint b = unit_point(*s3, 1);
  const LiftField x = LiftField::horizontal(hopf_field(2));
  const LiftField y = LiftField::vertical(hopf_field(3));
  const auto route = state.range(0) == 0 ? ConnectionRoute::Closed : ConnectionRoute::Koszul;
  for (auto _ : state) benchmark::DoNotOptimize(levi_civita(route, *w, b, x, y));
}
BENCHMARK(BM_Connection)->Arg(0)->Arg(1);

void BM_HarmonicityResidual(benchmark::State& state) {
  auto s3 = make_sphere(3);
  auto w = make_example58(s3);
  const Vec p = unit_point(*s3, 2).base;
  for (auto _ : state) benchmark::DoNotOptimize(harmonicity_residual(*w, hopf_field(1), p));
}
BENCHMARK(BM_HarmonicityResidual);

void BM_Energy(benchmark::State& state) {
  auto s3 = make_sphere(3);
  auto w = make_example58(s3);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(energy(*w, *hopf_field(1), level));
}
BENCHMARK(BM_Energy)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

// One flow step's worth of work: energy and tension at every node.
void BM_FlowNodes(benchmark::State& state) {
  auto t3 = make_torus(3);
  auto w = make_sasaki(t3);
  const DiscreteUnitField x = DiscreteUnitField::random(t3, static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_nodes(*w, x));
}
BENCHMARK(BM_FlowNodes)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FlowToConvergence(benchmark::State& state) {
  auto t3 = make_torus(3);
  auto w = make_sasaki(t3);
  const DiscreteUnitField x0 = DiscreteUnitField::random(t3, 3, 42);
  for (auto _ : state) benchmark::DoNotOptimize(gradient_flow(*w, x0));
}
BENCHMARK(BM_FlowToConvergence)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
