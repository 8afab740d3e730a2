#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "pwcn/conllu.hpp"
#include "pwcn/nn.hpp"
#include "pwcn/proximity.hpp"
#include "pwcn/train.hpp"

namespace {

using namespace pwcn;

nn::Params random_params(const nn::HyperParams& hp, int vocab, std::mt19937_64& rng) {
  auto p = nn::Params::zeros(hp, vocab);
  std::uniform_real_distribution<float> u(-0.1f, 0.1f);
  for (auto& t : p.tensors())
    for (float& x : t.values()) x = u(rng);
  return p;
}

// SemEval-like batch: sentence lengths 5..40.
std::vector<nn::Example> random_batch(int count, int vocab, std::mt19937_64& rng) {
  std::vector<nn::Example> out;
  for (int b = 0; b < count; ++b) {
    const std::size_t n = 5 + rng() % 36;
    nn::Example ex;
    for (std::size_t i = 0; i < n; ++i) ex.token_ids.push_back(2 + static_cast<int>(rng() % (vocab - 2)));
    ex.proximity = proximity::position_proximity(n, rng() % n, 1);
    ex.label = static_cast<int>(rng() % 3);
    out.push_back(std::move(ex));
  }
  return out;
}

void BM_Forward(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int dim = static_cast<int>(state.range(0));
  const auto p = random_params({dim, dim, 3, 3}, 5000, rng);
  const auto exs = random_batch(64, 5000, rng);
  const auto batch = nn::pack(std::span<const nn::Example>(exs));
  for (auto _ : state) benchmark::DoNotOptimize(nn::forward(p, batch));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_Forward)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_TrainStep(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int dim = static_cast<int>(state.range(0));
  auto p = random_params({dim, dim, 3, 3}, 5000, rng);
  const auto exs = random_batch(64, 5000, rng);
  const auto batch = nn::pack(std::span<const nn::Example>(exs));
  auto adam = train::AdamState<float>::zeros_like(p);
  for (auto _ : state) {
    const auto trace = nn::forward(p, batch);
    const auto res = nn::backward(trace, batch, p, {1e-5, true});
    train::adam_step(p, res.grads, adam, {});
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_TrainStep)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_TreeDistances(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<int> heads(n, corpus::DepForest::kRoot);
  for (std::size_t i = 1; i < n; ++i) heads[i] = static_cast<int>(rng() % i);
  const auto forest = corpus::make_forest(heads);
  for (auto _ : state) benchmark::DoNotOptimize(proximity::tree_distances(forest, n / 2, 1));
}
BENCHMARK(BM_TreeDistances)->Arg(12)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
