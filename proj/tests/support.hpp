#pragma once

// Shared fixtures: random parameters, random examples, tiny corpora.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pwcn/embeddings.hpp"
#include "pwcn/nn.hpp"
#include "pwcn/proximity.hpp"

namespace pwcn::testing {

template <typename T>
nn::BasicParams<T> random_params(const nn::HyperParams& hyper,
                                 nn::Index vocab, std::mt19937_64& rng,
                                 double range) {
  auto p = nn::BasicParams<T>::zeros(hyper, vocab);
  std::uniform_real_distribution<double> dist(-range, range);
  for (auto& t : p.tensors()) {
    for (T& x : t.values()) x = static_cast<T>(dist(rng));
  }
  p.embedding.row(0).setZero();
  return p;
}

// Random sentence with a random aspect span and position weights.
inline nn::Example random_example(std::size_t n, int vocab, int classes,
                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<int> tok(2, vocab - 1);
  std::uniform_int_distribution<std::size_t> start_dist(0, n - 1);
  nn::Example ex;
  for (std::size_t i = 0; i < n; ++i) ex.token_ids.push_back(tok(rng));
  const std::size_t start = start_dist(rng);
  std::uniform_int_distribution<std::size_t> len_dist(1, n - start);
  ex.proximity = proximity::position_proximity(n, start, len_dist(rng));
  ex.label = std::uniform_int_distribution<int>(0, classes - 1)(rng);
  return ex;
}

// Random forest on n nodes: each node attaches to a random earlier node in
// a random order, or becomes a root with probability root_p.
inline std::vector<int> random_heads(std::size_t n, double root_p,
                                     std::mt19937_64& rng) {
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution new_root(root_p);
  std::vector<int> heads(n, -1);
  for (std::size_t k = 1; k < n; ++k) {
    if (new_root(rng)) continue;
    heads[order[k]] = order[rng() % k];
  }
  return heads;
}

inline double rel_error(double a, double b, double floor = 1e-6) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace pwcn::testing

namespace pwcn::testing {

// Learnable toy corpus: a filler sentence with one aspect token and one
// polarity cue (ids 2..4 map to the three labels) placed next to it.
struct ToyCorpus {
  std::vector<nn::Example> examples;
  int vocab = 0;
};

inline ToyCorpus toy_corpus(std::size_t count, std::mt19937_64& rng) {
  constexpr int kFiller = 20;
  ToyCorpus toy;
  toy.vocab = 5 + kFiller;
  std::uniform_int_distribution<int> filler(5, 5 + kFiller - 1);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = 4 + rng() % 6;
    const std::size_t aspect = rng() % n;
    nn::Example ex;
    for (std::size_t i = 0; i < n; ++i) ex.token_ids.push_back(filler(rng));
    ex.label = static_cast<int>(k % 3);
    const std::size_t cue = aspect + 1 < n ? aspect + 1 : aspect - 1;
    ex.token_ids[cue] = 2 + ex.label;
    ex.proximity = proximity::position_proximity(n, aspect, 1);
    toy.examples.push_back(std::move(ex));
  }
  return toy;
}

inline corpus::EmbeddingTable toy_table(int vocab, int dim, std::mt19937_64& rng) {
  corpus::EmbeddingTable table;
  table.matrix.resize(vocab, dim);
  std::uniform_real_distribution<float> u(-0.25f, 0.25f);
  for (Eigen::Index i = 0; i < table.matrix.size(); ++i) table.matrix.data()[i] = u(rng);
  table.matrix.row(0).setZero();
  return table;
}

}  // namespace pwcn::testing
