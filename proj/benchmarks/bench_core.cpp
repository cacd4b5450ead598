// Microbenchmarks for the hot paths: scheme assembly/evaluation, the
// Dirichlet solve, the eigen power iteration and the minimax fit.

#include <benchmark/benchmark.h>

#include <cmath>

#include "viscolab/eigen_solve.hpp"
#include "viscolab/minimax.hpp"
#include "viscolab/rng.hpp"
#include "viscolab/solver.hpp"

using namespace viscolab;

namespace {

OperatorSpec pucci12() {
  return OperatorSpec::pucci_pure(ExtremalSign::Plus, 1.0, 2.0);
}

void BM_SchemeResidual(benchmark::State& state) {
  GridPtr g = Grid::build(Domain::disc(pt(0.0, 0.0), 1.0),
                          1.0 / static_cast<double>(state.range(0)));
  MonotoneScheme scheme(pucci12(), g, StencilConfig{8});
  GridFunction u = GridFunction::sample(
      g, [](Point p) { return (1.0 - p[0] * p[0] - p[1] * p[1]) / 4.0; });
  GridFunction f(g);
  for (auto _ : state) {
    GridFunction r = residual_field(scheme, u, f);
    benchmark::DoNotOptimize(r.values().data());
  }
  state.SetItemsProcessed(state.iterations() * g->n_interior());
}
BENCHMARK(BM_SchemeResidual)->Arg(32)->Arg(64);

void BM_SolveInterval(benchmark::State& state) {
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0),
                          1.0 / static_cast<double>(state.range(0)));
  CoefficientField f = CoefficientField::constant(-2.0);
  for (auto _ : state) {
    Solution sol = solve_dirichlet(pucci12(), g, f, [](Point) { return 0.0; });
    benchmark::DoNotOptimize(sol.residual_norm);
  }
}
BENCHMARK(BM_SolveInterval)->Arg(64)->Arg(256);

void BM_SolveDisc(benchmark::State& state) {
  GridPtr g = Grid::build(Domain::disc(pt(0.0, 0.0), 1.0),
                          1.0 / static_cast<double>(state.range(0)));
  CoefficientField f = CoefficientField::constant(-1.0);
  for (auto _ : state) {
    Solution sol = solve_dirichlet(pucci12(), g, f, [](Point) { return 0.0; });
    benchmark::DoNotOptimize(sol.residual_norm);
  }
}
BENCHMARK(BM_SolveDisc)->Arg(16)->Arg(32);

void BM_EigenInterval(benchmark::State& state) {
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0),
                          1.0 / static_cast<double>(state.range(0)));
  CoefficientField one = CoefficientField::constant(1.0);
  for (auto _ : state) {
    EigenPair p = eigen_solve(pucci12(), one, g, ExtremalSign::Plus);
    benchmark::DoNotOptimize(p.alpha);
  }
}
BENCHMARK(BM_EigenInterval)->Arg(64)->Arg(128);

void BM_MinimaxFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(31);
  std::vector<Point> xs;
  std::vector<double> us;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + 2.0 * i / (n - 1.0);
    xs.push_back(pt(x, 0.0));
    us.push_back(std::pow(std::abs(x), 1.5) + 0.01 * rng.normal());
  }
  for (auto _ : state) {
    AffineFit fit = minimax_affine_fit(xs, us, 1, MinimaxMethod::Lawson);
    benchmark::DoNotOptimize(fit.error);
  }
}
BENCHMARK(BM_MinimaxFit)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
