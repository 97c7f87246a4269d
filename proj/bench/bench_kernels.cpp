// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "tnbn/evaluate.hpp"
#include "tnbn/fixtures.hpp"
#include "tnbn/inference.hpp"
#include "tnbn/simulate.hpp"

namespace {

// Ten nodes with up to four states: joint tables in the 10^4..10^6 range.
const tnbn::CompiledNetwork& wide_network() {
  static const tnbn::CompiledNetwork net = [] {
    std::mt19937_64 rng(2024);
    tnbn::RandomNetworkOptions opts;
    opts.min_nodes = 10;
    opts.max_nodes = 10;
    opts.max_states = 4;
    return tnbn::compile(tnbn::random_network(rng, opts));
  }();
  return net;
}

const std::shared_ptr<const tnbn::CompiledNetwork>& accident() {
  static const auto net = std::make_shared<const tnbn::CompiledNetwork>(tnbn::compile(tnbn::accident_network()));
  return net;
}

void BM_JointEnumerate(benchmark::State& state) {
  const auto& net = wide_network();
  for (auto _ : state) benchmark::DoNotOptimize(tnbn::joint_enumerate(net, {}));
}

void BM_JointEnumerateSerial(benchmark::State& state) {
  const auto& net = wide_network();
  for (auto _ : state) benchmark::DoNotOptimize(tnbn::joint_enumerate_serial(net, {}));
}

void BM_SampleTrajectories(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tnbn::sample_trajectories(*accident(), n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleTrajectoriesSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tnbn::sample_trajectories_serial(*accident(), n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Evaluate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(tnbn::evaluate(accident(), tnbn::EvalCondition::leaf_observed, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(tnbn::evaluate_serial(accident(), tnbn::EvalCondition::leaf_observed, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_JointEnumerate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JointEnumerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleTrajectories)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleTrajectoriesSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
