#include <benchmark/benchmark.h>

#include <random>

#include "exeuler/kernels.hpp"

using namespace exeuler;

namespace {

std::vector<VortexParticle> random_particles(int n) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> rad(0.2, 2.0);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  std::vector<VortexParticle> ps;
  ps.reserve(n);
  for (int j = 0; j < n; ++j)
    ps.push_back({to_vec(std::polar(std::exp(rad(rng)), ang(rng))), ang(rng) - 3.0});
  return ps;
}

}  // namespace

static void BM_VelocitySummation(benchmark::State& state) {
  const ConformalMap map = build_map(BodyShape::disk(1.0), 4);
  const auto ps = random_particles(static_cast<int>(state.range(0)));
  const Vec2 x{4.0, 1.0};
  for (auto _ : state) {
    Vec2 u = velocity_from_particles(map, ps, x, {0.05});
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VelocitySummation)->RangeMultiplier(4)->Range(64, 16384);

static void BM_VelocitySummationEllipse(benchmark::State& state) {
  const ConformalMap map = build_map(BodyShape::ellipse(2.0, 1.0), 16);
  const auto ps = random_particles(static_cast<int>(state.range(0)));
  const Vec2 x{4.0, 1.0};
  for (auto _ : state) {
    Vec2 u = velocity_from_particles(map, ps, x, {0.05});
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VelocitySummationEllipse)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();
