#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "typexp/decide.hpp"
#include "typexp/harness.hpp"
#include "typexp/random.hpp"
#include "typexp/simplex.hpp"
#include "typexp/types.hpp"

namespace {

using namespace typexp;

// M distributions on a 5-letter alphabet, each a distinct shift of one profile.
std::vector<Distribution> family(std::size_t m) {
  std::vector<Distribution> out;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> w(5);
    double total = 0.0;
    for (std::size_t a = 0; a < 5; ++a) {
      w[a] = 1.0 + static_cast<double>((a * (j + 1) + j) % 7);
      total += w[a];
    }
    for (double& v : w) v /= total;
    out.emplace_back(std::move(w));
  }
  return out;
}

SymbolSequence observation(const Distribution& p, std::size_t n) {
  RandomStream rng(derive_key({17, n}));
  return sample_sequence(p, n, rng);
}

void BM_NearestNeighbour(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const HypothesisSet h = HypothesisSet::with_uniform_priors(family(m));
  const SymbolSequence x = observation(h[0], 1000);
  for (auto _ : state) benchmark::DoNotOptimize(nn_decide(h, x).index);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NearestNeighbour)->RangeMultiplier(2)->Range(2, 64)->Complexity(benchmark::oN);

void BM_Robust(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const RobustModel model(family(m), std::vector<double>(m, 0.01));
  const SymbolSequence x = observation(model.nominals()[0], 1000);
  for (auto _ : state) benchmark::DoNotOptimize(robust_decide(model, x).index);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Robust)->RangeMultiplier(2)->Range(2, 64)->Complexity(benchmark::oN);

template <DglVariant V>
void BM_Dgl(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const std::vector<Distribution> q = family(m);
  const SymbolSequence x = observation(q[0], 1000);
  for (auto _ : state) benchmark::DoNotOptimize(dgl_decide(q, x, V).index);
  state.SetComplexityN(state.range(0));
}
BENCHMARK_TEMPLATE(BM_Dgl, DglVariant::kMinimumDistance)
    ->RangeMultiplier(2)
    ->Range(2, 64)
    ->Complexity(benchmark::oNSquared);
BENCHMARK_TEMPLATE(BM_Dgl, DglVariant::kTournament)
    ->RangeMultiplier(2)
    ->Range(2, 64)
    ->Complexity(benchmark::oNSquared);

void BM_Chernoff(benchmark::State& state) {
  const auto q = family(2);
  for (auto _ : state) benchmark::DoNotOptimize(chernoff_information(q[0], q[1]).value);
}
BENCHMARK(BM_Chernoff);

void BM_RunTrial(benchmark::State& state) {
  const auto set = family(5);
  const ExperimentPlan plan{HypothesisSet::with_uniform_priors(set),
                            RobustModel(set, std::vector<double>(5, 0.01)),
                            {Rule::kRobust},
                            {500},
                            1,
                            3,
                            1};
  const auto rule = static_cast<Rule>(state.range(0));
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(plan, rule, 500, k++).decided_index);
  state.SetLabel(std::string(to_string(rule)));
}
BENCHMARK(BM_RunTrial)->DenseRange(0, 4);

}  // namespace

BENCHMARK_MAIN();
