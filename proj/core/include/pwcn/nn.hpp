#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace pwcn::nn {

using Eigen::Index;

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using RowMajorMatrix =
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct HyperParams {
  int embed_dim = 300;   // d_e
  int hidden_dim = 300;  // d_h, per direction
  int num_classes = 3;   // d_p
  int kernel = 3;        // convolution length l, odd

  int channels() const { return 2 * hidden_dim; }
  int half_width() const { return kernel / 2; }
};

// Throws ArgumentError on non-positive dims or an even kernel.
void validate(const HyperParams& hyper);

// Gate rows are stacked in the order input, forget, cell, output.
template <typename T>
struct LstmParams {
  Matrix<T> input_weights;      // 4 d_h x d_e
  Matrix<T> recurrent_weights;  // 4 d_h x d_h
  Vector<T> bias;               // 4 d_h
};

// Non-owning view of one parameter tensor. `row_major` tells how `data`
// is laid out with respect to the logical rows x cols shape.
template <typename T>
struct TensorRef {
  std::string_view name;
  T* data;
  Index rows;
  Index cols;
  bool row_major;

  Index size() const { return rows * cols; }
  std::span<T> values() const {
    return {data, static_cast<std::size_t>(size())};
  }
};

inline constexpr std::size_t kNumTensors = 11;

// Every trainable tensor of the network. Also used for gradients and
// optimizer moments, which mirror the shapes exactly.
template <typename T>
struct BasicParams {
  RowMajorMatrix<T> embedding;  // |V| x d_e
  LstmParams<T> forward;
  LstmParams<T> backward;
  Matrix<T> conv_weight;  // (l * 2 d_h) x 2 d_h
  Vector<T> conv_bias;    // 2 d_h
  Matrix<T> fc_weight;    // 2 d_h x d_p
  Vector<T> fc_bias;      // d_p

  static BasicParams zeros(const HyperParams& hyper, Index vocab_size);

  // Fixed order: embedding, forward {input, recurrent, bias},
  // backward {input, recurrent, bias}, conv weight, conv bias,
  // fc weight, fc bias. Checkpoints rely on this order.
  std::array<TensorRef<T>, kNumTensors> tensors();
  std::array<TensorRef<const T>, kNumTensors> tensors() const;

  template <typename U>
  BasicParams<U> cast() const;

  // Sum of squared entries. The embedding is optional since it may be
  // frozen.
  double squared_norm(bool include_embedding = true) const;
  bool all_finite() const;
  void set_zero();

  HyperParams hyper() const;
  Index vocab_size() const { return embedding.rows(); }
};

using Params = BasicParams<float>;
template <typename T>
using Gradients = BasicParams<T>;

// A sentence ready for the network.
struct Example {
  std::vector<int> token_ids;
  std::vector<double> proximity;
  int label = 0;
};

// Padded batch, time-major: position t of sequence b lives in column
// t * batch_size + b. Pads carry token id 0 and proximity 0.
struct SequenceBatch {
  Index max_len = 0;
  Index batch_size = 0;
  std::vector<Index> lengths;
  std::vector<int> token_ids;
  std::vector<double> proximity;
  std::vector<int> labels;

  Index column(Index t, Index b) const { return t * batch_size + b; }
  Index columns() const { return max_len * batch_size; }
};

// Packs examples into one batch. `pad_to` forces a longer max_len.
// Throws ShapeError if an example's proximity length differs from its
// token count or a sequence is empty.
SequenceBatch pack(std::span<const Example* const> examples, Index pad_to = 0);
SequenceBatch pack(std::span<const Example> examples, Index pad_to = 0);

template <typename T>
struct LstmTrace {
  Matrix<T> gates;      // 4 d_h x TB, post-activation
  Matrix<T> candidate;  // cell value before masking, d_h x TB
  Matrix<T> candidate_tanh;
  Matrix<T> cell;    // carried cell state after step t
  Matrix<T> hidden;  // carried hidden state after step t
};

// Every activation needed by backward().
template <typename T>
struct ForwardTrace {
  Index max_len = 0;
  Index batch_size = 0;
  Eigen::Array<T, 1, Eigen::Dynamic> mask;  // 1 on real tokens
  Matrix<T> embedded;                       // d_e x TB
  LstmTrace<T> forward;
  LstmTrace<T> backward;
  Matrix<T> hidden;    // h: 2 d_h x TB, zero on pads
  Matrix<T> weighted;  // r = p * h
  Matrix<T> conv_pre;  // convolution before ReLU
  Matrix<T> conv;      // q
  Matrix<T> pooled;    // q_s: 2 d_h x B
  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> argmax;  // 2 d_h x B
  Matrix<T> logits;  // d_p x B
  Matrix<T> probs;   // d_p x B
};

struct LossOptions {
  double l2 = 0.0;
  bool train_embedding = true;
};

struct LossValue {
  double cross_entropy = 0.0;  // summed over the batch
  double regularizer = 0.0;
  int clamped = 0;  // examples whose gold probability hit the 1e-12 floor

  double total() const { return cross_entropy + regularizer; }
};

template <typename T>
struct BackwardResult {
  Gradients<T> grads;
  LossValue loss;
};

// ---- single-sentence building blocks; one column per token ----

// Forward and backward LSTM from zero states; row blocks [fwd; bwd].
template <typename T>
Matrix<T> bilstm_forward(const Matrix<T>& embeddings,
                         const LstmParams<T>& forward,
                         const LstmParams<T>& backward);

// r_i = p_i h_i. Throws ShapeError when lengths differ.
template <typename T>
Matrix<T> apply_proximity(const Matrix<T>& hidden, std::span<const double> p);

// Zero-padded length-preserving convolution followed by ReLU. Throws
// ShapeError on inconsistent shapes or an even kernel.
template <typename T>
Matrix<T> pwconv_forward(const Matrix<T>& weighted, const Matrix<T>& weight,
                         const Vector<T>& bias, int kernel);

template <typename T>
struct PoolResult {
  Vector<T> values;
  std::vector<Index> argmax;  // smallest index wins ties
};

template <typename T>
PoolResult<T> max_pool(const Matrix<T>& features);

// Stable softmax; throws NumericError on non-finite input.
template <typename T>
Vector<T> softmax(const Vector<T>& logits);

template <typename T>
Vector<T> classify(const Vector<T>& pooled, const Matrix<T>& weight,
                   const Vector<T>& bias);

// -log max(y[label], 1e-12).
template <typename T>
double cross_entropy(const Vector<T>& probs, int label, bool* clamped = nullptr);

template <typename T>
double l2_penalty(const BasicParams<T>& params, const LossOptions& options);

// Per-example loss: cross entropy plus the L2 term.
template <typename T>
double loss(const Vector<T>& probs, int label, const BasicParams<T>& params,
            const LossOptions& options);

// ---- batched network ----

template <typename T>
ForwardTrace<T> forward(const BasicParams<T>& params,
                        const SequenceBatch& batch);

// Summed cross entropy over the batch plus one L2 term.
template <typename T>
LossValue batch_loss(const ForwardTrace<T>& trace, const SequenceBatch& batch,
                     const BasicParams<T>& params, const LossOptions& options);

// Exact gradients of batch_loss with respect to every tensor.
template <typename T>
BackwardResult<T> backward(const ForwardTrace<T>& trace,
                           const SequenceBatch& batch,
                           const BasicParams<T>& params,
                           const LossOptions& options);

#define PWCN_NN_EXTERN(T)                                                     \
  extern template struct BasicParams<T>;                                      \
  extern template Matrix<T> bilstm_forward(                                   \
      const Matrix<T>&, const LstmParams<T>&, const LstmParams<T>&);          \
  extern template Matrix<T> apply_proximity(const Matrix<T>&,                 \
                                            std::span<const double>);         \
  extern template Matrix<T> pwconv_forward(const Matrix<T>&,                  \
                                           const Matrix<T>&,                  \
                                           const Vector<T>&, int);            \
  extern template PoolResult<T> max_pool(const Matrix<T>&);                   \
  extern template Vector<T> softmax(const Vector<T>&);                        \
  extern template Vector<T> classify(const Vector<T>&, const Matrix<T>&,      \
                                     const Vector<T>&);                       \
  extern template double cross_entropy(const Vector<T>&, int, bool*);         \
  extern template double l2_penalty(const BasicParams<T>&,                    \
                                    const LossOptions&);                      \
  extern template double loss(const Vector<T>&, int, const BasicParams<T>&,   \
                              const LossOptions&);                            \
  extern template ForwardTrace<T> forward(const BasicParams<T>&,              \
                                          const SequenceBatch&);              \
  extern template LossValue batch_loss(const ForwardTrace<T>&,                \
                                       const SequenceBatch&,                  \
                                       const BasicParams<T>&,                 \
                                       const LossOptions&);                   \
  extern template BackwardResult<T> backward(                                 \
      const ForwardTrace<T>&, const SequenceBatch&, const BasicParams<T>&,    \
      const LossOptions&);

PWCN_NN_EXTERN(float)
PWCN_NN_EXTERN(double)
#undef PWCN_NN_EXTERN

template <typename T>
template <typename U>
BasicParams<U> BasicParams<T>::cast() const {
  BasicParams<U> out;
  out.embedding = embedding.template cast<U>();
  out.forward = {forward.input_weights.template cast<U>(),
                 forward.recurrent_weights.template cast<U>(),
                 forward.bias.template cast<U>()};
  out.backward = {backward.input_weights.template cast<U>(),
                  backward.recurrent_weights.template cast<U>(),
                  backward.bias.template cast<U>()};
  out.conv_weight = conv_weight.template cast<U>();
  out.conv_bias = conv_bias.template cast<U>();
  out.fc_weight = fc_weight.template cast<U>();
  out.fc_bias = fc_bias.template cast<U>();
  return out;
}

}  // namespace pwcn::nn
