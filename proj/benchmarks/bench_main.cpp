#include <vector>

#include <benchmark/benchmark.h>

#include "ptcrum/ptcrum.hpp"

using namespace ptcrum;

namespace {

std::shared_ptr<const OscillatorModel> osc() { return oscillator_model(0.75, 1.0, 1); }

}  // namespace

// Tree walk against the compiled tape on the default grid.
static void BM_EvaluateTree(benchmark::State& state) {
  const Expression psi = osc()->wavefunction(int(state.range(0)));
  const auto xs = Grid(8.0, 1601).nodes();
  for (auto _ : state) {
    for (double x : xs) benchmark::DoNotOptimize(evaluate(psi, x));
  }
  state.SetItemsProcessed(state.iterations() * xs.size());
}
BENCHMARK(BM_EvaluateTree)->Arg(2)->Arg(8);

static void BM_EvaluateCompiled(benchmark::State& state) {
  const CompiledExpression tape(osc()->wavefunction(int(state.range(0))));
  const auto xs = Grid(8.0, 1601).nodes();
  for (auto _ : state) benchmark::DoNotOptimize(tape.sample(xs));
  state.SetItemsProcessed(state.iterations() * xs.size());
}
BENCHMARK(BM_EvaluateCompiled)->Arg(2)->Arg(8);

static void BM_Differentiate(benchmark::State& state) {
  const Expression psi = osc()->wavefunction(4);
  for (auto _ : state) benchmark::DoNotOptimize(differentiate(psi, int(state.range(0))));
}
BENCHMARK(BM_Differentiate)->Arg(1)->Arg(3);

static void BM_WronskianValue(benchmark::State& state) {
  const auto m = osc();
  std::vector<Expression> fs;
  for (int k = 0; k < state.range(0); ++k) fs.push_back(m->wavefunction(k + 1));
  const WronskianEvaluator w(fs);
  const auto xs = Grid(8.0, 401).nodes();
  for (auto _ : state) {
    for (double x : xs) benchmark::DoNotOptimize(w(x));
  }
  state.SetItemsProcessed(state.iterations() * xs.size());
}
BENCHMARK(BM_WronskianValue)->DenseRange(1, 3);

static void BM_CrumPotential(benchmark::State& state) {
  const TransformationSet t(osc(), {1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(crum_potential(t));
}
BENCHMARK(BM_CrumPotential)->Unit(benchmark::kMillisecond);

static void BM_FirstOrderChain(benchmark::State& state) {
  const TransformationSet t(osc(), {1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(first_order_chain(t));
}
BENCHMARK(BM_FirstOrderChain)->Unit(benchmark::kMillisecond);

static void BM_Eigenvalues(benchmark::State& state) {
  const DiscreteHamiltonian h = discretize(osc()->potential(), Grid(8.0, int(state.range(0))), 4);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
}
BENCHMARK(BM_Eigenvalues)->Arg(201)->Arg(401)->Arg(801)->Unit(benchmark::kMillisecond);

static void BM_PseudoSusy(benchmark::State& state) {
  const TransformationSet t(osc(), {1, 2});
  const Grid g(8.0, int(state.range(0)));
  for (auto _ : state) {
    const PseudoSusy s(t, g, 8);
    benchmark::DoNotOptimize(s.intertwining());
  }
}
BENCHMARK(BM_PseudoSusy)->Arg(801)->Arg(3201)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
