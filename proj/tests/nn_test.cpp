#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/lstm_oracle.hpp"
#include "pwcn/error.hpp"
#include "pwcn/nn.hpp"
#include "support.hpp"

namespace pwcn::nn {
namespace {

using MatD = Matrix<double>;
using VecD = Vector<double>;

oracle::Mat to_rows(const MatD& m) {
  oracle::Mat out(m.rows(), std::vector<double>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

oracle::LstmWeights to_oracle(const LstmParams<double>& p) {
  return {to_rows(p.input_weights), to_rows(p.recurrent_weights),
          std::vector<double>(p.bias.data(), p.bias.data() + p.bias.size())};
}

TEST(BiLstm, ZeroParamsGiveZeroStates) {
  HyperParams hp{4, 3, 3, 3};
  const auto p = BasicParams<double>::zeros(hp, 5);
  const MatD x = MatD::Random(4, 6);
  const MatD h = bilstm_forward(x, p.forward, p.backward);
  EXPECT_EQ(h.rows(), 6);
  EXPECT_EQ(h.cols(), 6);
  EXPECT_EQ(h.cwiseAbs().maxCoeff(), 0.0);
}

TEST(BiLstm, SingleTokenShape) {
  std::mt19937_64 rng(1);
  const auto p = testing::random_params<double>({4, 4, 3, 3}, 5, rng, 0.5);
  const MatD x = MatD::Random(4, 1);
  const MatD h = bilstm_forward(x, p.forward, p.backward);
  EXPECT_EQ(h.rows(), 8);
  EXPECT_EQ(h.cols(), 1);
}

TEST(BiLstm, MatchesScalarOracle) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_params<double>({4, 4, 3, 3}, 5, rng, 0.8);
    const Index n = 1 + trial % 5;
    MatD x(4, n);
    std::uniform_real_distribution<double> u(-1, 1);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
    const MatD got = bilstm_forward(x, p.forward, p.backward);

    const oracle::Mat inputs = to_rows(x.transpose());
    const auto fwd = oracle::lstm_run(to_oracle(p.forward), inputs, false);
    const auto bwd = oracle::lstm_run(to_oracle(p.backward), inputs, true);
    for (Index t = 0; t < n; ++t) {
      for (Index j = 0; j < 4; ++j) {
        EXPECT_NEAR(got(j, t), fwd[t][j], 1e-12);
        EXPECT_NEAR(got(4 + j, t), bwd[t][j], 1e-12);
      }
    }
  }
}

TEST(ApplyProximity, Examples) {
  const MatD h = MatD::Random(4, 3);
  const std::vector<double> ones{1, 1, 1};
  EXPECT_EQ(apply_proximity(h, ones), h);

  const std::vector<double> span{0.5, 0, 0.5};
  const MatD r = apply_proximity(h, span);
  EXPECT_EQ(r.col(1).cwiseAbs().maxCoeff(), 0.0);

  MatD single(2, 1);
  single << 2, -4;
  const std::vector<double> half{0.5};
  const MatD got = apply_proximity(single, half);
  EXPECT_EQ(got(0, 0), 1.0);
  EXPECT_EQ(got(1, 0), -2.0);

  const std::vector<double> short_p{1, 1};
  EXPECT_THROW(apply_proximity(h, short_p), ShapeError);
}

TEST(ApplyProximity, ScalingCovariance) {
  const MatD h = MatD::Random(6, 5);
  const std::vector<double> p{0.2, 0.4, 0, 0.8, 0.6};
  std::vector<double> p3;
  for (double v : p) p3.push_back(v * 4.0);
  EXPECT_EQ(apply_proximity(h, p3), 4.0 * apply_proximity(h, p));
}

TEST(PwConv, ZeroPaddedWindowSum) {
  MatD r(1, 2);
  r << 1, 2;
  const MatD w = MatD::Ones(3, 1);
  const VecD b = VecD::Zero(1);
  const MatD q = pwconv_forward(r, w, b, 3);
  ASSERT_EQ(q.cols(), 2);
  EXPECT_EQ(q(0, 0), 3.0);
  EXPECT_EQ(q(0, 1), 3.0);
}

TEST(PwConv, NegativeBiasKillsEverything) {
  const MatD r = MatD::Random(4, 5);
  const MatD w = MatD::Zero(12, 4);
  const VecD b = VecD::Constant(4, -1.0);
  EXPECT_EQ(pwconv_forward(r, w, b, 3).cwiseAbs().maxCoeff(), 0.0);
}

// Entries are multiples of 1/16 with small numerators, so every partial sum
// is exact and the comparison does not depend on summation order.
TEST(PwConv, KernelOneIsPointwiseAffineRelu) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> k(-16, 16);
  const auto u = [&](std::mt19937_64& g) { return k(g) / 16.0; };
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 1 + trial % 6;
    const Index n = 1 + trial % 7;
    MatD r(d, n), w(d, d);
    VecD b(d);
    for (Index i = 0; i < r.size(); ++i) r.data()[i] = u(rng);
    for (Index i = 0; i < w.size(); ++i) w.data()[i] = u(rng);
    for (Index i = 0; i < b.size(); ++i) b[i] = u(rng);
    const MatD q = pwconv_forward(r, w, b, 1);
    const auto w_rows = to_rows(w);
    const std::vector<double> bias(b.data(), b.data() + d);
    for (Index i = 0; i < n; ++i) {
      const std::vector<double> x(r.col(i).data(), r.col(i).data() + d);
      const auto want = oracle::affine_relu(w_rows, bias, x);
      for (Index j = 0; j < d; ++j) EXPECT_EQ(q(j, i), want[j]);
    }
  }
}

TEST(PwConv, ShapeErrors) {
  const MatD r = MatD::Random(2, 3);
  EXPECT_THROW(pwconv_forward(r, MatD(MatD::Zero(6, 2)), VecD(VecD::Zero(2)), 2), ShapeError);
  EXPECT_THROW(pwconv_forward(r, MatD(MatD::Zero(5, 2)), VecD(VecD::Zero(2)), 3), ShapeError);
  EXPECT_THROW(pwconv_forward(r, MatD(MatD::Zero(6, 2)), VecD(VecD::Zero(3)), 3), ShapeError);
}

TEST(MaxPool, PerChannelMax) {
  MatD q(2, 2);
  q << 1, 3, 5, 2;  // columns are tokens: token0 = (1,5), token1 = (3,2)
  const auto pool = max_pool(q);
  EXPECT_EQ(pool.values[0], 3.0);
  EXPECT_EQ(pool.values[1], 5.0);
  EXPECT_EQ(pool.argmax, (std::vector<Index>{1, 0}));
}

TEST(MaxPool, SingleTokenAndTies) {
  MatD one(3, 1);
  one << 1, 2, 3;
  EXPECT_EQ(max_pool(one).values, VecD(one.col(0)));
  MatD tied(1, 4);
  tied << 0.5, 2, 2, 1;
  EXPECT_EQ(max_pool(tied).argmax[0], 1);
}

TEST(Classify, UniformWhenWeightsZero) {
  const VecD y = classify<double>(VecD::Random(4), MatD::Zero(4, 3), VecD::Zero(3));
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(y[i], 1.0 / 3.0, 1e-15);
}

TEST(Classify, StableForHugeLogits) {
  VecD logits(3);
  logits << 1000, 0, 0;
  const VecD y = softmax(logits);
  EXPECT_NEAR(y[0], 1.0, 1e-12);
  EXPECT_TRUE(y.allFinite());
}

TEST(Classify, HandSoftmax) {
  VecD logits(3);
  logits << std::log(2.0), 0, 0;
  const VecD y = softmax(logits);
  EXPECT_NEAR(y[0], 0.5, 1e-15);
  EXPECT_NEAR(y[1], 0.25, 1e-15);
  EXPECT_NEAR(y[2], 0.25, 1e-15);
}

TEST(Classify, NonFiniteLogitsThrow) {
  VecD logits(2);
  logits << std::nan(""), 0;
  EXPECT_THROW(softmax(logits), NumericError);
}

TEST(Loss, Examples) {
  const auto zero = BasicParams<double>::zeros({2, 2, 3, 1}, 3);
  VecD perfect(3);
  perfect << 1, 0, 0;
  EXPECT_EQ(loss(perfect, 0, zero, {0.0, true}), 0.0);

  VecD y(3);
  y << 0.5, 0.25, 0.25;
  EXPECT_NEAR(loss(y, 1, zero, {0.0, true}), 1.3862943611198906, 1e-12);
  EXPECT_EQ(l2_penalty(zero, {1.0, true}), 0.0);

  bool clamped = false;
  EXPECT_NEAR(cross_entropy(perfect, 1, &clamped), -std::log(1e-12), 1e-9);
  EXPECT_TRUE(clamped);
}

TEST(Loss, L2IsSquaredNorm) {
  auto p = BasicParams<double>::zeros({1, 1, 2, 1}, 2);
  p.fc_bias << 3, 4;
  p.embedding(1, 0) = 2;
  EXPECT_DOUBLE_EQ(l2_penalty(p, {0.5, true}), 0.5 * (9 + 16 + 4));
  EXPECT_DOUBLE_EQ(l2_penalty(p, {0.5, false}), 0.5 * (9 + 16));
}

// The batched network agrees with the single-sentence building blocks.
TEST(Forward, BatchedEqualsComposition) {
  std::mt19937_64 rng(8);
  const HyperParams hp{5, 3, 3, 3};
  const auto p = testing::random_params<double>(hp, 12, rng, 0.6);
  std::vector<Example> exs;
  for (std::size_t n : {4u, 1u, 7u}) exs.push_back(testing::random_example(n, 12, 3, rng));
  const auto batch = pack(std::span<const Example>(exs));
  const auto trace = forward(p, batch);
  for (std::size_t b = 0; b < exs.size(); ++b) {
    const auto& ex = exs[b];
    MatD emb(5, static_cast<Index>(ex.token_ids.size()));
    for (Index t = 0; t < emb.cols(); ++t) emb.col(t) = p.embedding.row(ex.token_ids[t]).transpose();
    const MatD h = bilstm_forward(emb, p.forward, p.backward);
    const MatD r = apply_proximity(h, ex.proximity);
    const MatD q = pwconv_forward(r, p.conv_weight, p.conv_bias, 3);
    const auto pooled = max_pool(q);
    const VecD y = classify(pooled.values, p.fc_weight, p.fc_bias);
    for (Index c = 0; c < 3; ++c) {
      EXPECT_NEAR(trace.probs(c, static_cast<Index>(b)), y[c], 1e-12);
    }
  }
}

TEST(Forward, InvariantsOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const HyperParams hp{3, 2, 3, trial % 2 ? 3 : 1};
    const auto p = testing::random_params<double>(hp, 9, rng, 1.0);
    std::vector<Example> exs;
    for (int b = 0; b < 4; ++b) exs.push_back(testing::random_example(1 + rng() % 8, 9, 3, rng));
    const auto batch = pack(std::span<const Example>(exs));
    const auto tr = forward(p, batch);
    EXPECT_EQ(tr.probs.rows(), 3);
    EXPECT_EQ(tr.conv.minCoeff() >= 0.0, true);
    for (Index b = 0; b < 4; ++b) {
      EXPECT_NEAR(tr.probs.col(b).sum(), 1.0, 1e-6);
      EXPECT_GE(tr.probs.col(b).minCoeff(), 0.0);
      EXPECT_LE(tr.probs.col(b).maxCoeff(), 1.0);
      // r is exactly zero on the aspect span
      for (Index t = 0; t < batch.lengths[b]; ++t) {
        if (exs[b].proximity[t] == 0.0) {
          EXPECT_EQ(tr.weighted.col(batch.column(t, b)).cwiseAbs().maxCoeff(), 0.0);
        }
      }
    }
  }
}

TEST(Forward, DeterministicBitwise) {
  std::mt19937_64 rng(12);
  const auto p = testing::random_params<float>({6, 4, 3, 3}, 10, rng, 0.3);
  std::vector<Example> exs;
  for (int b = 0; b < 5; ++b) exs.push_back(testing::random_example(2 + b, 10, 3, rng));
  const auto batch = pack(std::span<const Example>(exs));
  const auto a = forward(p, batch);
  const auto b = forward(p, batch);
  EXPECT_EQ(a.hidden, b.hidden);
  EXPECT_EQ(a.conv, b.conv);
  EXPECT_EQ(a.probs, b.probs);
}

TEST(Forward, PadExtensionLeavesProbabilitiesUnchanged) {
  std::mt19937_64 rng(13);
  const auto p = testing::random_params<double>({4, 3, 3, 3}, 10, rng, 0.7);
  std::vector<Example> exs;
  for (int b = 0; b < 4; ++b) exs.push_back(testing::random_example(1 + 2 * b, 10, 3, rng));
  const auto tight = forward(p, pack(std::span<const Example>(exs)));
  const auto padded = forward(p, pack(std::span<const Example>(exs), 15));
  EXPECT_LT((tight.probs - padded.probs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pack, RejectsMismatchedProximity) {
  Example ex{{2, 3}, {1.0}, 0};
  EXPECT_THROW(pack(std::span<const Example>(&ex, 1)), ShapeError);
}

TEST(Backward, ZeroGradientAtPerfectOneHot) {
  // All-zero weights except a huge bias on the gold class give y == e_label
  // up to a subnormal remainder from exp, so every gradient vanishes.
  const HyperParams hp{3, 2, 3, 3};
  auto p = BasicParams<double>::zeros(hp, 6);
  p.fc_bias << 0, 1000, 0;
  Example ex{{2, 3, 4}, {0.5, 0, 0.5}, 1};
  const auto batch = pack(std::span<const Example>(&ex, 1));
  const auto tr = forward(p, batch);
  const auto res = backward(tr, batch, p, {0.0, true});
  for (const auto& t : res.grads.tensors()) {
    for (double g : t.values()) EXPECT_LE(std::abs(g), 1e-300) << t.name;
  }
}

TEST(Backward, UnusedEmbeddingRowsGetNoGradient) {
  std::mt19937_64 rng(21);
  const auto p = testing::random_params<double>({3, 2, 3, 3}, 10, rng, 0.5);
  Example ex{{2, 5, 5, 7}, {0.75, 0, 0.75, 0.5}, 2};
  const auto batch = pack(std::span<const Example>(&ex, 1), 6);
  const auto res = backward(forward(p, batch), batch, p, {0.0, true});
  for (Index r = 0; r < 10; ++r) {
    const bool used = r == 2 || r == 5 || r == 7;
    if (!used) EXPECT_EQ(res.grads.embedding.row(r).cwiseAbs().maxCoeff(), 0.0) << r;
  }
  EXPECT_GT(res.grads.embedding.row(5).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Backward, FrozenEmbeddingGetsNoGradient) {
  std::mt19937_64 rng(22);
  const auto p = testing::random_params<double>({3, 2, 3, 3}, 6, rng, 0.5);
  Example ex{{2, 3}, {0, 0.5}, 0};
  const auto batch = pack(std::span<const Example>(&ex, 1));
  const auto res = backward(forward(p, batch), batch, p, {0.1, false});
  EXPECT_EQ(res.grads.embedding.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Params, CastAndTensorsOrder) {
  std::mt19937_64 rng(4);
  const auto p = testing::random_params<double>({2, 2, 3, 3}, 4, rng, 1.0);
  const auto f = p.cast<float>();
  EXPECT_EQ(f.hyper().kernel, 3);
  const auto names = p.tensors();
  EXPECT_EQ(names.front().name, "embedding");
  EXPECT_EQ(names.back().name, "fc_bias");
  EXPECT_EQ(names[7].rows, 3 * 4);
  EXPECT_EQ(names[7].cols, 4);
}

}  // namespace
}  // namespace pwcn::nn
