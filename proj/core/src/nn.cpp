#include "pwcn/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pwcn/error.hpp"

namespace pwcn::nn {

namespace {

template <typename T>
using RowArray = Eigen::Array<T, 1, Eigen::Dynamic>;

template <typename Derived>
auto sigmoid(const Eigen::ArrayBase<Derived>& x) {
  return x.logistic();
}

template <typename T>
RowArray<T> make_mask(const SequenceBatch& batch) {
  RowArray<T> mask = RowArray<T>::Zero(batch.columns());
  for (Index b = 0; b < batch.batch_size; ++b) {
    for (Index t = 0; t < batch.lengths[b]; ++t) {
      mask[batch.column(t, b)] = T(1);
    }
  }
  return mask;
}

// One LSTM direction over a time-major padded batch. Masked positions
// carry the previous state through unchanged.
template <typename T>
void run_lstm(const LstmParams<T>& p, const Matrix<T>& inputs,
              const RowArray<T>& mask, Index steps, Index batch, bool reverse,
              LstmTrace<T>& trace) {
  const Index h = p.recurrent_weights.cols();
  const Index cols = steps * batch;

  trace.gates.noalias() = p.input_weights * inputs;
  trace.gates.colwise() += p.bias;
  trace.candidate.resize(h, cols);
  trace.candidate_tanh.resize(h, cols);
  trace.cell.resize(h, cols);
  trace.hidden.resize(h, cols);

  Matrix<T> h_prev = Matrix<T>::Zero(h, batch);
  Matrix<T> c_prev = Matrix<T>::Zero(h, batch);
  for (Index step = 0; step < steps; ++step) {
    const Index t = reverse ? steps - 1 - step : step;
    auto gates = trace.gates.middleCols(t * batch, batch);
    gates.noalias() += p.recurrent_weights * h_prev;
    gates.topRows(2 * h) = sigmoid(gates.topRows(2 * h).array()).matrix();
    gates.middleRows(2 * h, h) = gates.middleRows(2 * h, h).array().tanh().matrix();
    gates.bottomRows(h) = sigmoid(gates.bottomRows(h).array()).matrix();

    const auto m = mask.segment(t * batch, batch);
    const RowArray<T> keep = T(1) - m;
    const auto in_gate = gates.topRows(h).array();
    const auto forget_gate = gates.middleRows(h, h).array();
    const auto cell_gate = gates.middleRows(2 * h, h).array();
    const auto out_gate = gates.bottomRows(h).array();

    auto cand = trace.candidate.middleCols(t * batch, batch);
    auto cand_tanh = trace.candidate_tanh.middleCols(t * batch, batch);
    auto cell = trace.cell.middleCols(t * batch, batch);
    auto hidden = trace.hidden.middleCols(t * batch, batch);

    cand = (forget_gate * c_prev.array() + in_gate * cell_gate).matrix();
    cand_tanh = cand.array().tanh().matrix();
    cell = (cand.array().rowwise() * m + c_prev.array().rowwise() * keep).matrix();
    hidden = ((out_gate * cand_tanh.array()).rowwise() * m +
              h_prev.array().rowwise() * keep)
                 .matrix();
    h_prev = hidden;
    c_prev = cell;
  }
}

// Backpropagation through time for one direction. `d_out` is the
// gradient flowing into the per-position outputs (already masked).
// Accumulates into `grad` and `d_inputs`.
template <typename T>
void backprop_lstm(const LstmParams<T>& p, const LstmTrace<T>& trace,
                   const Matrix<T>& inputs, const RowArray<T>& mask,
                   Index steps, Index batch, bool reverse,
                   const Matrix<T>& d_out, LstmParams<T>& grad,
                   Matrix<T>& d_inputs) {
  const Index h = p.recurrent_weights.cols();
  Matrix<T> d_gates(4 * h, steps * batch);
  Matrix<T> dh_next = Matrix<T>::Zero(h, batch);
  Matrix<T> dc_next = Matrix<T>::Zero(h, batch);
  const Matrix<T> zeros = Matrix<T>::Zero(h, batch);

  for (Index step = steps - 1; step >= 0; --step) {
    const Index t = reverse ? steps - 1 - step : step;
    const Index col = t * batch;
    const bool first = step == 0;
    const Index prev_col = (reverse ? t + 1 : t - 1) * batch;
    const Matrix<T> c_prev_m =
        first ? zeros : Matrix<T>(trace.cell.middleCols(prev_col, batch));
    const Matrix<T> h_prev =
        first ? zeros : Matrix<T>(trace.hidden.middleCols(prev_col, batch));
    const auto c_prev = c_prev_m.array();

    const auto m = mask.segment(col, batch);
    const RowArray<T> keep = T(1) - m;
    const auto gates = trace.gates.middleCols(col, batch).array();
    const auto in_gate = gates.topRows(h);
    const auto forget_gate = gates.middleRows(h, h);
    const auto cell_gate = gates.middleRows(2 * h, h);
    const auto out_gate = gates.bottomRows(h);
    const auto cand_tanh = trace.candidate_tanh.middleCols(col, batch).array();

    const Matrix<T> dh_tilde =
        ((d_out.middleCols(col, batch).array() + dh_next.array()).rowwise() * m)
            .matrix();
    const Matrix<T> dc_tilde =
        ((dc_next.array().rowwise() * m) +
         dh_tilde.array() * out_gate * (T(1) - cand_tanh.square()))
            .matrix();

    auto da = d_gates.middleCols(col, batch);
    da.topRows(h) = (dc_tilde.array() * cell_gate * in_gate * (T(1) - in_gate)).matrix();
    da.middleRows(h, h) =
        (dc_tilde.array() * c_prev * forget_gate * (T(1) - forget_gate)).matrix();
    da.middleRows(2 * h, h) =
        (dc_tilde.array() * in_gate * (T(1) - cell_gate.square())).matrix();
    da.bottomRows(h) =
        (dh_tilde.array() * cand_tanh * out_gate * (T(1) - out_gate)).matrix();

    dc_next = (dc_tilde.array() * forget_gate +
               dc_next.array().rowwise() * keep)
                  .matrix();
    Matrix<T> dh_prev = (dh_next.array().rowwise() * keep).matrix();
    dh_prev.noalias() += p.recurrent_weights.transpose() * da;
    dh_next = std::move(dh_prev);
    if (!first) {
      grad.recurrent_weights.noalias() += da * h_prev.transpose();
    }
  }

  grad.input_weights.noalias() += d_gates * inputs.transpose();
  grad.bias += d_gates.rowwise().sum();
  d_inputs.noalias() += p.input_weights.transpose() * d_gates;
}

template <typename T>
Matrix<T> conv_batched(const Matrix<T>& weighted, const Matrix<T>& weight,
                       const Vector<T>& bias, int kernel, Index steps,
                       Index batch) {
  const Index d_in = weighted.rows();
  const Index half = kernel / 2;
  Matrix<T> out(weight.cols(), steps * batch);
  out.colwise() = bias;
  for (Index k = 0; k < kernel; ++k) {
    const Index shift = k - half;
    const Index lo = std::max<Index>(0, -shift);
    const Index hi = std::min<Index>(steps, steps - shift);
    if (hi <= lo) continue;
    const Index count = (hi - lo) * batch;
    out.middleCols(lo * batch, count).noalias() +=
        weight.middleRows(k * d_in, d_in).transpose() *
        weighted.middleCols((lo + shift) * batch, count);
  }
  return out;
}

template <typename T>
void check_conv_shapes(const Matrix<T>& weighted, const Matrix<T>& weight,
                       const Vector<T>& bias, int kernel) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw ShapeError("convolution kernel must be odd and >= 1, got " +
                     std::to_string(kernel));
  }
  if (weight.rows() != kernel * weighted.rows()) {
    throw ShapeError("convolution weight has " + std::to_string(weight.rows()) +
                     " rows, expected " +
                     std::to_string(kernel * weighted.rows()));
  }
  if (bias.size() != weight.cols()) {
    throw ShapeError("convolution bias size does not match output channels");
  }
}

void check_batch(const SequenceBatch& batch, Index vocab_size) {
  const auto cols = static_cast<std::size_t>(batch.columns());
  if (batch.batch_size < 1 || batch.max_len < 1 ||
      batch.lengths.size() != static_cast<std::size_t>(batch.batch_size) ||
      batch.token_ids.size() != cols || batch.proximity.size() != cols) {
    throw ShapeError("inconsistent sequence batch");
  }
  for (Index len : batch.lengths) {
    if (len < 1 || len > batch.max_len) {
      throw ShapeError("sequence length out of range");
    }
  }
  for (int id : batch.token_ids) {
    if (id < 0 || id >= vocab_size) {
      throw ShapeError("token id " + std::to_string(id) +
                       " outside the embedding table");
    }
  }
}

template <typename T>
void check_labels(const SequenceBatch& batch, Index classes) {
  if (batch.labels.size() != static_cast<std::size_t>(batch.batch_size)) {
    throw ShapeError("batch has no label for every sequence");
  }
  for (int label : batch.labels) {
    if (label < 0 || label >= classes) {
      throw ShapeError("label " + std::to_string(label) + " out of range");
    }
  }
}

}  // namespace

void validate(const HyperParams& hyper) {
  if (hyper.embed_dim < 1 || hyper.hidden_dim < 1 || hyper.num_classes < 1) {
    throw ArgumentError("all network dimensions must be >= 1");
  }
  if (hyper.kernel < 1 || hyper.kernel % 2 == 0) {
    throw ArgumentError("kernel length must be odd and >= 1");
  }
}

// ---------------------------------------------------------------------------
// BasicParams

template <typename T>
BasicParams<T> BasicParams<T>::zeros(const HyperParams& hyper,
                                     Index vocab_size) {
  validate(hyper);
  const Index e = hyper.embed_dim;
  const Index h = hyper.hidden_dim;
  const Index c = hyper.channels();
  BasicParams p;
  p.embedding = RowMajorMatrix<T>::Zero(vocab_size, e);
  for (LstmParams<T>* dir : {&p.forward, &p.backward}) {
    dir->input_weights = Matrix<T>::Zero(4 * h, e);
    dir->recurrent_weights = Matrix<T>::Zero(4 * h, h);
    dir->bias = Vector<T>::Zero(4 * h);
  }
  p.conv_weight = Matrix<T>::Zero(hyper.kernel * c, c);
  p.conv_bias = Vector<T>::Zero(c);
  p.fc_weight = Matrix<T>::Zero(c, hyper.num_classes);
  p.fc_bias = Vector<T>::Zero(hyper.num_classes);
  return p;
}

namespace {

template <typename T, typename Self>
auto tensor_list(Self& self) {
  using Ref = TensorRef<T>;
  auto ref = [](std::string_view name, auto& m, bool row_major) {
    return Ref{name, m.data(), m.rows(), m.cols(), row_major};
  };
  return std::array<Ref, kNumTensors>{
      ref("embedding", self.embedding, true),
      ref("forward.input_weights", self.forward.input_weights, false),
      ref("forward.recurrent_weights", self.forward.recurrent_weights, false),
      ref("forward.bias", self.forward.bias, false),
      ref("backward.input_weights", self.backward.input_weights, false),
      ref("backward.recurrent_weights", self.backward.recurrent_weights, false),
      ref("backward.bias", self.backward.bias, false),
      ref("conv_weight", self.conv_weight, false),
      ref("conv_bias", self.conv_bias, false),
      ref("fc_weight", self.fc_weight, false),
      ref("fc_bias", self.fc_bias, false),
  };
}

}  // namespace

template <typename T>
std::array<TensorRef<T>, kNumTensors> BasicParams<T>::tensors() {
  return tensor_list<T>(*this);
}

template <typename T>
std::array<TensorRef<const T>, kNumTensors> BasicParams<T>::tensors() const {
  return tensor_list<const T>(*this);
}

template <typename T>
double BasicParams<T>::squared_norm(bool include_embedding) const {
  double sum = 0.0;
  for (const auto& t : tensors()) {
    if (!include_embedding && t.name == "embedding") continue;
    for (T v : t.values()) sum += static_cast<double>(v) * v;
  }
  return sum;
}

template <typename T>
bool BasicParams<T>::all_finite() const {
  for (const auto& t : tensors()) {
    for (T v : t.values()) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

template <typename T>
void BasicParams<T>::set_zero() {
  for (auto& t : tensors()) std::fill(t.values().begin(), t.values().end(), T(0));
}

template <typename T>
HyperParams BasicParams<T>::hyper() const {
  HyperParams hp;
  hp.embed_dim = static_cast<int>(embedding.cols());
  hp.hidden_dim = static_cast<int>(forward.recurrent_weights.cols());
  hp.num_classes = static_cast<int>(fc_bias.size());
  hp.kernel = hp.hidden_dim > 0
                  ? static_cast<int>(conv_weight.rows() / hp.channels())
                  : 0;
  return hp;
}

// ---------------------------------------------------------------------------
// Batching

SequenceBatch pack(std::span<const Example* const> examples, Index pad_to) {
  SequenceBatch batch;
  batch.batch_size = static_cast<Index>(examples.size());
  batch.max_len = pad_to;
  for (const Example* ex : examples) {
    if (ex->token_ids.empty()) throw ShapeError("empty sequence in batch");
    if (ex->proximity.size() != ex->token_ids.size()) {
      throw ShapeError("proximity length differs from token count");
    }
    batch.max_len =
        std::max<Index>(batch.max_len, static_cast<Index>(ex->token_ids.size()));
  }
  const auto cols = static_cast<std::size_t>(batch.columns());
  batch.token_ids.assign(cols, 0);
  batch.proximity.assign(cols, 0.0);
  for (Index b = 0; b < batch.batch_size; ++b) {
    const Example& ex = *examples[b];
    const auto len = static_cast<Index>(ex.token_ids.size());
    batch.lengths.push_back(len);
    batch.labels.push_back(ex.label);
    for (Index t = 0; t < len; ++t) {
      batch.token_ids[batch.column(t, b)] = ex.token_ids[t];
      batch.proximity[batch.column(t, b)] = ex.proximity[t];
    }
  }
  return batch;
}

SequenceBatch pack(std::span<const Example> examples, Index pad_to) {
  std::vector<const Example*> ptrs;
  ptrs.reserve(examples.size());
  for (const Example& ex : examples) ptrs.push_back(&ex);
  return pack(std::span<const Example* const>(ptrs), pad_to);
}

// ---------------------------------------------------------------------------
// Single-sentence operations

template <typename T>
Matrix<T> bilstm_forward(const Matrix<T>& embeddings,
                         const LstmParams<T>& forward,
                         const LstmParams<T>& backward) {
  const Index n = embeddings.cols();
  if (n < 1) throw ShapeError("bilstm_forward needs at least one token");
  if (forward.input_weights.cols() != embeddings.rows() ||
      backward.input_weights.cols() != embeddings.rows()) {
    throw ShapeError("LSTM input size does not match embedding size");
  }
  const RowArray<T> mask = RowArray<T>::Ones(n);
  LstmTrace<T> fwd, bwd;
  run_lstm(forward, embeddings, mask, n, 1, false, fwd);
  run_lstm(backward, embeddings, mask, n, 1, true, bwd);
  Matrix<T> out(fwd.hidden.rows() + bwd.hidden.rows(), n);
  out << fwd.hidden, bwd.hidden;
  return out;
}

template <typename T>
Matrix<T> apply_proximity(const Matrix<T>& hidden, std::span<const double> p) {
  if (static_cast<std::size_t>(hidden.cols()) != p.size()) {
    throw ShapeError("proximity vector has " + std::to_string(p.size()) +
                     " entries for " + std::to_string(hidden.cols()) +
                     " tokens");
  }
  Matrix<T> out = hidden;
  for (Index i = 0; i < out.cols(); ++i) out.col(i) *= static_cast<T>(p[i]);
  return out;
}

template <typename T>
Matrix<T> pwconv_forward(const Matrix<T>& weighted, const Matrix<T>& weight,
                         const Vector<T>& bias, int kernel) {
  check_conv_shapes(weighted, weight, bias, kernel);
  return conv_batched(weighted, weight, bias, kernel, weighted.cols(), 1)
      .cwiseMax(T(0));
}

template <typename T>
PoolResult<T> max_pool(const Matrix<T>& features) {
  if (features.cols() < 1) throw ArgumentError("max_pool over zero tokens");
  PoolResult<T> result;
  result.values = features.col(0);
  result.argmax.assign(features.rows(), 0);
  for (Index i = 1; i < features.cols(); ++i) {
    for (Index j = 0; j < features.rows(); ++j) {
      if (features(j, i) > result.values[j]) {
        result.values[j] = features(j, i);
        result.argmax[j] = i;
      }
    }
  }
  return result;
}

template <typename T>
Vector<T> softmax(const Vector<T>& logits) {
  if (!logits.allFinite()) throw NumericError("non-finite logits");
  const Vector<T> shifted = logits.array() - logits.maxCoeff();
  Vector<T> e = shifted.array().exp();
  return e / e.sum();
}

template <typename T>
Vector<T> classify(const Vector<T>& pooled, const Matrix<T>& weight,
                   const Vector<T>& bias) {
  if (weight.rows() != pooled.size() || weight.cols() != bias.size()) {
    throw ShapeError("classifier shapes disagree");
  }
  return softmax<T>(weight.transpose() * pooled + bias);
}

template <typename T>
double cross_entropy(const Vector<T>& probs, int label, bool* clamped) {
  if (label < 0 || label >= probs.size()) {
    throw ArgumentError("label out of range");
  }
  constexpr double kFloor = 1e-12;
  const double y = static_cast<double>(probs[label]);
  if (clamped) *clamped = y < kFloor;
  return -std::log(std::max(y, kFloor));
}

template <typename T>
double l2_penalty(const BasicParams<T>& params, const LossOptions& options) {
  if (options.l2 == 0.0) return 0.0;
  return options.l2 * params.squared_norm(options.train_embedding);
}

template <typename T>
double loss(const Vector<T>& probs, int label, const BasicParams<T>& params,
            const LossOptions& options) {
  return cross_entropy(probs, label) + l2_penalty(params, options);
}

// ---------------------------------------------------------------------------
// Batched forward / backward

template <typename T>
ForwardTrace<T> forward(const BasicParams<T>& params,
                        const SequenceBatch& batch) {
  check_batch(batch, params.embedding.rows());
  const HyperParams hyper = params.hyper();
  const Index steps = batch.max_len;
  const Index bsz = batch.batch_size;
  const Index cols = batch.columns();
  const Index h = hyper.hidden_dim;

  ForwardTrace<T> tr;
  tr.max_len = steps;
  tr.batch_size = bsz;
  tr.mask = make_mask<T>(batch);

  tr.embedded.resize(hyper.embed_dim, cols);
  for (Index c = 0; c < cols; ++c) {
    tr.embedded.col(c) = params.embedding.row(batch.token_ids[c]).transpose();
  }

  run_lstm(params.forward, tr.embedded, tr.mask, steps, bsz, false, tr.forward);
  run_lstm(params.backward, tr.embedded, tr.mask, steps, bsz, true,
           tr.backward);

  tr.hidden.resize(2 * h, cols);
  tr.hidden.topRows(h) = ((tr.forward.gates.bottomRows(h).array() *
                           tr.forward.candidate_tanh.array())
                              .rowwise() *
                          tr.mask)
                             .matrix();
  tr.hidden.bottomRows(h) = ((tr.backward.gates.bottomRows(h).array() *
                              tr.backward.candidate_tanh.array())
                                 .rowwise() *
                             tr.mask)
                                .matrix();

  tr.weighted = tr.hidden;
  for (Index c = 0; c < cols; ++c) {
    tr.weighted.col(c) *= static_cast<T>(batch.proximity[c]);
  }

  tr.conv_pre = conv_batched(tr.weighted, params.conv_weight, params.conv_bias,
                             hyper.kernel, steps, bsz);
  tr.conv = tr.conv_pre.cwiseMax(T(0));

  const Index ch = tr.conv.rows();
  tr.pooled.resize(ch, bsz);
  tr.argmax.resize(ch, bsz);
  for (Index b = 0; b < bsz; ++b) {
    tr.pooled.col(b) = tr.conv.col(batch.column(0, b));
    tr.argmax.col(b).setZero();
    for (Index t = 1; t < batch.lengths[b]; ++t) {
      const auto col = tr.conv.col(batch.column(t, b));
      for (Index j = 0; j < ch; ++j) {
        if (col[j] > tr.pooled(j, b)) {
          tr.pooled(j, b) = col[j];
          tr.argmax(j, b) = t;
        }
      }
    }
  }

  tr.logits.noalias() = params.fc_weight.transpose() * tr.pooled;
  tr.logits.colwise() += params.fc_bias;
  tr.probs.resize(tr.logits.rows(), bsz);
  for (Index b = 0; b < bsz; ++b) {
    tr.probs.col(b) = softmax<T>(tr.logits.col(b));
  }
  return tr;
}

template <typename T>
LossValue batch_loss(const ForwardTrace<T>& trace, const SequenceBatch& batch,
                     const BasicParams<T>& params, const LossOptions& options) {
  check_labels<T>(batch, trace.probs.rows());
  LossValue value;
  for (Index b = 0; b < trace.batch_size; ++b) {
    bool clamped = false;
    value.cross_entropy += cross_entropy<T>(trace.probs.col(b),
                                            batch.labels[b], &clamped);
    value.clamped += clamped ? 1 : 0;
  }
  value.regularizer = l2_penalty(params, options);
  return value;
}

template <typename T>
BackwardResult<T> backward(const ForwardTrace<T>& trace,
                           const SequenceBatch& batch,
                           const BasicParams<T>& params,
                           const LossOptions& options) {
  const HyperParams hyper = params.hyper();
  const Index steps = trace.max_len;
  const Index bsz = trace.batch_size;
  const Index cols = steps * bsz;
  const Index h = hyper.hidden_dim;

  BackwardResult<T> result;
  result.loss = batch_loss(trace, batch, params, options);
  Gradients<T>& g = result.grads;
  g = BasicParams<T>::zeros(hyper, params.embedding.rows());

  // softmax + cross entropy
  Matrix<T> d_logits = trace.probs;
  for (Index b = 0; b < bsz; ++b) d_logits(batch.labels[b], b) -= T(1);
  g.fc_weight.noalias() = trace.pooled * d_logits.transpose();
  g.fc_bias = d_logits.rowwise().sum();
  const Matrix<T> d_pooled = params.fc_weight * d_logits;

  // max pool routes to the winning position, then ReLU
  Matrix<T> d_pre = Matrix<T>::Zero(trace.conv.rows(), cols);
  for (Index b = 0; b < bsz; ++b) {
    for (Index j = 0; j < d_pre.rows(); ++j) {
      const Index c = batch.column(trace.argmax(j, b), b);
      if (trace.conv_pre(j, c) > T(0)) d_pre(j, c) += d_pooled(j, b);
    }
  }

  // convolution
  g.conv_bias = d_pre.rowwise().sum();
  const Index d_in = trace.weighted.rows();
  const Index half = hyper.half_width();
  Matrix<T> d_weighted = Matrix<T>::Zero(d_in, cols);
  for (Index k = 0; k < hyper.kernel; ++k) {
    const Index shift = k - half;
    const Index lo = std::max<Index>(0, -shift);
    const Index hi = std::min<Index>(steps, steps - shift);
    if (hi <= lo) continue;
    const Index count = (hi - lo) * bsz;
    const auto src = trace.weighted.middleCols((lo + shift) * bsz, count);
    const auto dst = d_pre.middleCols(lo * bsz, count);
    g.conv_weight.middleRows(k * d_in, d_in).noalias() += src * dst.transpose();
    d_weighted.middleCols((lo + shift) * bsz, count).noalias() +=
        params.conv_weight.middleRows(k * d_in, d_in) * dst;
  }

  // proximity scaling; p is a constant
  for (Index c = 0; c < cols; ++c) {
    d_weighted.col(c) *= static_cast<T>(batch.proximity[c]);
  }

  // BiLSTM
  Matrix<T> d_embedded = Matrix<T>::Zero(hyper.embed_dim, cols);
  const Matrix<T> d_fwd = d_weighted.topRows(h);
  const Matrix<T> d_bwd = d_weighted.bottomRows(h);
  backprop_lstm(params.forward, trace.forward, trace.embedded, trace.mask,
                steps, bsz, false, d_fwd, g.forward, d_embedded);
  backprop_lstm(params.backward, trace.backward, trace.embedded, trace.mask,
                steps, bsz, true, d_bwd, g.backward, d_embedded);

  if (options.train_embedding) {
    for (Index c = 0; c < cols; ++c) {
      if (trace.mask[c] == T(0)) continue;
      g.embedding.row(batch.token_ids[c]) += d_embedded.col(c).transpose();
    }
  }

  if (options.l2 != 0.0) {
    const T scale = static_cast<T>(2.0 * options.l2);
    auto grads = g.tensors();
    const auto values = params.tensors();
    for (std::size_t i = 0; i < kNumTensors; ++i) {
      if (!options.train_embedding && values[i].name == "embedding") continue;
      auto dst = grads[i].values();
      auto src = values[i].values();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += scale * src[k];
    }
  }
  return result;
}

#define PWCN_NN_INSTANTIATE(T)                                                \
  template struct BasicParams<T>;                                             \
  template Matrix<T> bilstm_forward(const Matrix<T>&, const LstmParams<T>&,   \
                                    const LstmParams<T>&);                    \
  template Matrix<T> apply_proximity(const Matrix<T>&,                        \
                                     std::span<const double>);                \
  template Matrix<T> pwconv_forward(const Matrix<T>&, const Matrix<T>&,       \
                                    const Vector<T>&, int);                   \
  template PoolResult<T> max_pool(const Matrix<T>&);                          \
  template Vector<T> softmax(const Vector<T>&);                               \
  template Vector<T> classify(const Vector<T>&, const Matrix<T>&,             \
                              const Vector<T>&);                              \
  template double cross_entropy(const Vector<T>&, int, bool*);                \
  template double l2_penalty(const BasicParams<T>&, const LossOptions&);      \
  template double loss(const Vector<T>&, int, const BasicParams<T>&,          \
                       const LossOptions&);                                   \
  template ForwardTrace<T> forward(const BasicParams<T>&,                     \
                                   const SequenceBatch&);                     \
  template LossValue batch_loss(const ForwardTrace<T>&, const SequenceBatch&, \
                                const BasicParams<T>&, const LossOptions&);   \
  template BackwardResult<T> backward(const ForwardTrace<T>&,                 \
                                      const SequenceBatch&,                   \
                                      const BasicParams<T>&,                  \
                                      const LossOptions&);

PWCN_NN_INSTANTIATE(float)
PWCN_NN_INSTANTIATE(double)

}  // namespace pwcn::nn
