#include <benchmark/benchmark.h>

#include "exeuler/dynamics.hpp"

using namespace exeuler;

static void BM_CoupledStep(benchmark::State& state) {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.body.m = 3.14159265358979;
  st.body.J = 1.0;
  st.particles = {{{3.0, 0.6}, 1.5}, {{3.0, -0.6}, -1.5}};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  for (auto _ : state) {
    FlowState next = step(model, st, cfg);
    benchmark::DoNotOptimize(next.body.h);
  }
}
BENCHMARK(BM_CoupledStep);

static void BM_FixedBodyStep(benchmark::State& state) {
  const BodyModel model(BodyShape::disk(1.0));
  FlowState st;
  st.particles = {{{2.0, 0.0}, 6.28318530717959}};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.fixed_body = true;
  for (auto _ : state) {
    FlowState next = step(model, st, cfg);
    benchmark::DoNotOptimize(next.particles.data());
  }
}
BENCHMARK(BM_FixedBodyStep);
