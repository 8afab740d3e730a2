#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pwcn/embeddings.hpp"
#include "pwcn/metrics.hpp"
#include "pwcn/nn.hpp"
#include "pwcn/proximity.hpp"
#include "pwcn/vocabulary.hpp"

namespace pwcn::train {

struct TrainConfig {
  double learning_rate = 0.001;
  double l2 = 1e-5;
  int batch_size = 64;
  int epochs = 30;
  std::uint64_t seed = 1;
  proximity::Mode mode = proximity::Mode::kPosition;
  int kernel = 3;
  int embed_dim = 300;
  int hidden_dim = 300;
  int num_classes = 3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Non-embedding parameters start from U(-init_range, init_range).
  double init_range = 0.01;
  bool train_embedding = true;

  nn::HyperParams hyper() const {
    return {embed_dim, hidden_dim, num_classes, kernel};
  }
};

// Throws ArgumentError on out-of-range settings.
void validate(const TrainConfig& config);

struct AdamOptions {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool train_embedding = true;
};

template <typename T>
struct AdamState {
  nn::BasicParams<T> first;   // m
  nn::BasicParams<T> second;  // v
  std::int64_t step = 0;

  static AdamState zeros_like(const nn::BasicParams<T>& params);
};

// One bias-corrected Adam update on every trainable tensor. Throws
// NumericError, leaving params and state untouched, when any gradient is
// non-finite.
template <typename T>
void adam_step(nn::BasicParams<T>& params, const nn::Gradients<T>& grads,
               AdamState<T>& state, const AdamOptions& options);

// Embedding rows come from `embeddings`; all other tensors are drawn
// i.i.d. from U(-init_range, init_range).
nn::Params init_params(const nn::HyperParams& hyper, std::uint64_t seed,
                       const corpus::EmbeddingTable& embeddings,
                       double init_range = 0.01);

// Token ids plus proximity weights, one Example per instance.
std::vector<nn::Example> encode(std::span<const Instance> instances,
                                std::span<const proximity::ProximityVector> weights,
                                const corpus::Vocabulary& vocab);

struct Batch {
  std::vector<std::size_t> indices;  // into the example list
  nn::SequenceBatch data;
};

// Splits examples into consecutive batches, after shuffling when a seed
// is given. The final batch may be short.
std::vector<Batch> make_batches(std::span<const nn::Example> examples,
                                int batch_size,
                                std::optional<std::uint64_t> shuffle_seed);

// Class distributions, one column per example, in input order.
nn::Matrix<float> predict(const nn::Params& params,
                          std::span<const nn::Example> examples,
                          int batch_size = 64);

// Index of the largest probability; ties go to the lower class.
int argmax(const Eigen::Ref<const nn::Vector<float>>& probs);

// Throws ArgumentError on an empty set.
metrics::EvalReport evaluate(const nn::Params& params,
                             std::span<const nn::Example> examples,
                             int batch_size = 64);

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;  // summed step losses / training examples
  double test_accuracy = 0.0;
  double test_macro_f1 = 0.0;
  double train_accuracy = -1.0;  // only when requested
};

struct TrainResult {
  nn::Params best;
  int best_epoch = 0;
  metrics::EvalReport best_report;
  std::vector<EpochLog> log;
  nn::Params last;
};

struct TrainHooks {
  std::function<void(const EpochLog&)> on_epoch;
  bool track_train_accuracy = false;
  // Stop early once training accuracy hits 1.0 (needs tracking).
  bool stop_when_fit = false;
};

// Adam epochs over `train_set`, evaluating on `test_set` after each epoch
// and keeping the parameters with the best test accuracy (first wins).
// Propagates NumericError from adam_step.
TrainResult train(const TrainConfig& config, nn::Params initial,
                  std::span<const nn::Example> train_set,
                  std::span<const nn::Example> test_set,
                  const TrainHooks& hooks = {});

// Tab-separated "epoch, train_loss, test_acc, test_macro_f1" line.
std::string format_epoch(const EpochLog& entry);

extern template struct AdamState<float>;
extern template struct AdamState<double>;
extern template void adam_step(nn::BasicParams<float>&,
                               const nn::Gradients<float>&, AdamState<float>&,
                               const AdamOptions&);
extern template void adam_step(nn::BasicParams<double>&,
                               const nn::Gradients<double>&, AdamState<double>&,
                               const AdamOptions&);

}  // namespace pwcn::train
