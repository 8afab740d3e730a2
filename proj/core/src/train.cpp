#include "pwcn/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "pwcn/error.hpp"

namespace pwcn::train {

void validate(const TrainConfig& c) {
  if (!(c.learning_rate > 0.0)) throw ArgumentError("learning rate must be > 0");
  if (!(c.l2 >= 0.0)) throw ArgumentError("L2 coefficient must be >= 0");
  if (c.batch_size < 1) throw ArgumentError("batch size must be >= 1");
  if (c.epochs < 0) throw ArgumentError("epoch count must be >= 0");
  if (!(c.init_range > 0.0)) throw ArgumentError("init range must be > 0");
  if (!(c.beta1 >= 0.0 && c.beta1 < 1.0 && c.beta2 >= 0.0 && c.beta2 < 1.0)) {
    throw ArgumentError("Adam betas must lie in [0, 1)");
  }
  if (!(c.epsilon > 0.0)) throw ArgumentError("Adam epsilon must be > 0");
  nn::validate(c.hyper());
}

// ---------------------------------------------------------------------------
// Adam

template <typename T>
AdamState<T> AdamState<T>::zeros_like(const nn::BasicParams<T>& params) {
  AdamState s;
  s.first = nn::BasicParams<T>::zeros(params.hyper(), params.vocab_size());
  s.second = s.first;
  return s;
}

template <typename T>
void adam_step(nn::BasicParams<T>& params, const nn::Gradients<T>& grads,
               AdamState<T>& state, const AdamOptions& o) {
  auto theta = params.tensors();
  const auto g = grads.tensors();
  auto m = state.first.tensors();
  auto v = state.second.tensors();
  for (std::size_t i = 0; i < nn::kNumTensors; ++i) {
    if (g[i].size() != theta[i].size() || m[i].size() != theta[i].size()) {
      throw ShapeError("gradient shape differs for " + std::string(theta[i].name));
    }
    if (!o.train_embedding && theta[i].name == "embedding") continue;
    for (T x : g[i].values()) {
      if (!std::isfinite(x)) {
        throw NumericError("non-finite gradient in " +
                           std::string(theta[i].name) + "; step " +
                           std::to_string(state.step + 1) + " aborted");
      }
    }
  }

  ++state.step;
  const double b1 = o.beta1;
  const double b2 = o.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  const T lr = static_cast<T>(o.learning_rate);
  const T eps = static_cast<T>(o.epsilon);
  for (std::size_t i = 0; i < nn::kNumTensors; ++i) {
    if (!o.train_embedding && theta[i].name == "embedding") continue;
    auto p = theta[i].values();
    auto gi = g[i].values();
    auto mi = m[i].values();
    auto vi = v[i].values();
    for (std::size_t k = 0; k < p.size(); ++k) {
      mi[k] = static_cast<T>(b1 * mi[k] + (1.0 - b1) * gi[k]);
      vi[k] = static_cast<T>(b2 * vi[k] + (1.0 - b2) * gi[k] * gi[k]);
      const T m_hat = static_cast<T>(mi[k] / c1);
      const T v_hat = static_cast<T>(vi[k] / c2);
      p[k] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

template struct AdamState<float>;
template struct AdamState<double>;
template void adam_step(nn::BasicParams<float>&, const nn::Gradients<float>&,
                        AdamState<float>&, const AdamOptions&);
template void adam_step(nn::BasicParams<double>&, const nn::Gradients<double>&,
                        AdamState<double>&, const AdamOptions&);

// ---------------------------------------------------------------------------

nn::Params init_params(const nn::HyperParams& hyper, std::uint64_t seed,
                       const corpus::EmbeddingTable& embeddings,
                       double init_range) {
  if (embeddings.dim() != hyper.embed_dim) {
    throw ArgumentError("embedding table has dimension " +
                        std::to_string(embeddings.dim()) + ", expected " +
                        std::to_string(hyper.embed_dim));
  }
  nn::Params params = nn::Params::zeros(hyper, embeddings.rows());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(static_cast<float>(-init_range),
                                             static_cast<float>(init_range));
  for (auto& t : params.tensors()) {
    if (t.name == "embedding") continue;
    for (float& x : t.values()) x = dist(rng);
  }
  params.embedding = embeddings.matrix;
  return params;
}

std::vector<nn::Example> encode(
    std::span<const Instance> instances,
    std::span<const proximity::ProximityVector> weights,
    const corpus::Vocabulary& vocab) {
  if (instances.size() != weights.size()) {
    throw ShapeError("instances and proximity vectors differ in count");
  }
  std::vector<nn::Example> out;
  out.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (weights[i].size() != instances[i].size()) {
      throw ShapeError("proximity vector length differs from sentence " +
                       instances[i].sentence_id);
    }
    nn::Example ex;
    ex.token_ids = vocab.encode(instances[i].tokens);
    ex.proximity = weights[i];
    ex.label = static_cast<int>(instances[i].label);
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<Batch> make_batches(std::span<const nn::Example> examples,
                                int batch_size,
                                std::optional<std::uint64_t> shuffle_seed) {
  if (batch_size < 1) throw ArgumentError("batch size must be >= 1");
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<Batch> batches;
  const auto bs = static_cast<std::size_t>(batch_size);
  for (std::size_t start = 0; start < order.size(); start += bs) {
    Batch batch;
    const std::size_t end = std::min(order.size(), start + bs);
    batch.indices.assign(order.begin() + start, order.begin() + end);
    std::vector<const nn::Example*> members;
    for (std::size_t i : batch.indices) members.push_back(&examples[i]);
    batch.data = nn::pack(std::span<const nn::Example* const>(members));
    batches.push_back(std::move(batch));
  }
  return batches;
}

int argmax(const Eigen::Ref<const nn::Vector<float>>& probs) {
  int best = 0;
  for (int c = 1; c < probs.size(); ++c) {
    if (probs[c] > probs[best]) best = c;
  }
  return best;
}

nn::Matrix<float> predict(const nn::Params& params,
                          std::span<const nn::Example> examples,
                          int batch_size) {
  nn::Matrix<float> probs(params.fc_bias.size(),
                          static_cast<nn::Index>(examples.size()));
  for (const Batch& batch : make_batches(examples, batch_size, std::nullopt)) {
    const auto trace = nn::forward(params, batch.data);
    for (std::size_t b = 0; b < batch.indices.size(); ++b) {
      probs.col(static_cast<nn::Index>(batch.indices[b])) =
          trace.probs.col(static_cast<nn::Index>(b));
    }
  }
  return probs;
}

metrics::EvalReport evaluate(const nn::Params& params,
                             std::span<const nn::Example> examples,
                             int batch_size) {
  if (examples.empty()) throw ArgumentError("empty evaluation set");
  const nn::Matrix<float> probs = predict(params, examples, batch_size);
  std::vector<int> gold, pred;
  gold.reserve(examples.size());
  pred.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    gold.push_back(examples[i].label);
    pred.push_back(argmax(probs.col(static_cast<nn::Index>(i))));
  }
  return metrics::evaluate_predictions(gold, pred,
                                       static_cast<int>(probs.rows()));
}

TrainResult train(const TrainConfig& config, nn::Params initial,
                  std::span<const nn::Example> train_set,
                  std::span<const nn::Example> test_set,
                  const TrainHooks& hooks) {
  validate(config);
  if (train_set.empty()) throw ArgumentError("empty training set");
  const nn::HyperParams hyper = initial.hyper();
  if (hyper.embed_dim != config.embed_dim ||
      hyper.hidden_dim != config.hidden_dim || hyper.kernel != config.kernel ||
      hyper.num_classes != config.num_classes) {
    throw ArgumentError("initial parameters do not match the configuration");
  }

  const nn::LossOptions loss_options{config.l2, config.train_embedding};
  const AdamOptions adam{config.learning_rate, config.beta1, config.beta2,
                         config.epsilon, config.train_embedding};

  TrainResult result;
  nn::Params params = std::move(initial);
  AdamState<float> state = AdamState<float>::zeros_like(params);
  bool have_best = false;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    double loss_sum = 0.0;
    for (const Batch& batch :
         make_batches(train_set, config.batch_size, config.seed + epoch)) {
      const auto trace = nn::forward(params, batch.data);
      auto step = nn::backward(trace, batch.data, params, loss_options);
      loss_sum += step.loss.total();
      adam_step(params, step.grads, state, adam);
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / static_cast<double>(train_set.size());
    metrics::EvalReport report;
    if (!test_set.empty()) {
      report = evaluate(params, test_set);
      entry.test_accuracy = report.accuracy;
      entry.test_macro_f1 = report.macro_f1;
    }
    if (hooks.track_train_accuracy) {
      entry.train_accuracy = evaluate(params, train_set).accuracy;
    }
    result.log.push_back(entry);
    if (hooks.on_epoch) hooks.on_epoch(entry);

    if (!have_best || report.accuracy > result.best_report.accuracy) {
      result.best = params;
      result.best_epoch = epoch;
      result.best_report = report;
      have_best = true;
    }
    if (hooks.stop_when_fit && entry.train_accuracy >= 1.0) break;
  }
  if (!have_best) result.best = params;
  result.last = std::move(params);
  return result;
}

std::string format_epoch(const EpochLog& e) {
  char line[128];
  std::snprintf(line, sizeof(line), "%d\t%.6f\t%.6f\t%.6f", e.epoch,
                e.train_loss, e.test_accuracy, e.test_macro_f1);
  return line;
}

}  // namespace pwcn::train
