#include <benchmark/benchmark.h>

#include "exeuler/oracle.hpp"

using namespace exeuler;

static void BM_PoissonSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AnnularGrid g{8.0, n, 2 * n};
  const GridField om = bump_vorticity(g, 3.0, 0.7, 1.0, 1.0);
  const std::vector<double> bc = far_field_closure(g, om);
  for (auto _ : state) {
    GridField psi = solve_poisson_fd(g, om, bc);
    benchmark::DoNotOptimize(psi.v.data());
  }
  state.SetItemsProcessed(state.iterations() * g.rows() * g.n_t);
}
BENCHMARK(BM_PoissonSolve)->RangeMultiplier(2)->Range(32, 256);
