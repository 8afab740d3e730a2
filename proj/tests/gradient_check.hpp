#pragma once

// Central finite-difference check of nn::backward. Test-only.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "pwcn/nn.hpp"
#include "support.hpp"

namespace pwcn::testing {

struct TensorCheck {
  std::string name;
  double rel_error = 0.0;       // ||a - n|| / max(||a||, ||n||)
  double max_elem_error = 0.0;  // elementwise, floor 1e-6
};

struct GradCheck {
  std::vector<TensorCheck> tensors;
  double worst = 0.0;
  std::string worst_name;
};

// True when a ReLU pre-activation or a max-pool runner-up sits within
// `margin` of the decision boundary, where finite differences are invalid.
inline bool near_kink(const nn::ForwardTrace<double>& tr,
                      const nn::SequenceBatch& batch, double margin) {
  for (nn::Index b = 0; b < tr.batch_size; ++b) {
    for (nn::Index j = 0; j < tr.conv.rows(); ++j) {
      double best = -std::numeric_limits<double>::infinity();
      double second = best;
      for (nn::Index t = 0; t < batch.lengths[b]; ++t) {
        const double z = tr.conv_pre(j, batch.column(t, b));
        if (std::abs(z) < margin) return true;
        const double q = std::max(z, 0.0);
        if (q > best) {
          second = best;
          best = q;
        } else if (q > second) {
          second = q;
        }
      }
      // Channels that are zero everywhere have no gradient through the
      // pool, so a tie among zeros is harmless.
      if (best > 0.0 && best - second < margin) return true;
    }
  }
  return false;
}

inline double total_loss(const nn::BasicParams<double>& p,
                         const nn::SequenceBatch& batch,
                         const nn::LossOptions& opt) {
  return nn::batch_loss(nn::forward(p, batch), batch, p, opt).total();
}

inline GradCheck gradient_check(nn::BasicParams<double> params,
                                const nn::SequenceBatch& batch,
                                const nn::LossOptions& opt, double eps = 1e-4) {
  const auto analytic = nn::backward(nn::forward(params, batch), batch, params, opt);
  const auto grads = analytic.grads.tensors();
  auto values = params.tensors();
  GradCheck out;
  for (std::size_t i = 0; i < nn::kNumTensors; ++i) {
    auto v = values[i].values();
    const auto g = grads[i].values();
    double diff2 = 0.0, a2 = 0.0, n2 = 0.0, max_elem = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double saved = v[k];
      v[k] = saved + eps;
      const double up = total_loss(params, batch, opt);
      v[k] = saved - eps;
      const double down = total_loss(params, batch, opt);
      v[k] = saved;
      const double numeric = (up - down) / (2.0 * eps);
      diff2 += (g[k] - numeric) * (g[k] - numeric);
      a2 += g[k] * g[k];
      n2 += numeric * numeric;
      max_elem = std::max(max_elem, rel_error(g[k], numeric));
    }
    TensorCheck tc;
    tc.name = std::string(values[i].name);
    tc.rel_error = std::sqrt(diff2) / std::max({std::sqrt(a2), std::sqrt(n2), 1e-8});
    tc.max_elem_error = max_elem;
    if (tc.rel_error > out.worst) {
      out.worst = tc.rel_error;
      out.worst_name = tc.name;
    }
    out.tensors.push_back(tc);
  }
  return out;
}

struct GradCheckCase {
  nn::BasicParams<double> params;
  nn::SequenceBatch batch;
  nn::LossOptions options;
};

// Random configuration with n <= 6, d_e = d_h = 4, kernel in {1, 3}, kept
// away from ReLU and max-pool ties.
inline GradCheckCase random_grad_case(std::mt19937_64& rng, int kernel) {
  while (true) {
    const nn::HyperParams hp{4, 4, 3, kernel};
    const int vocab = 8;
    GradCheckCase c;
    c.params = random_params<double>(hp, vocab, rng, 0.5);
    std::vector<nn::Example> exs;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int b = 0; b < count; ++b) {
      exs.push_back(random_example(1 + rng() % 6, vocab, 3, rng));
    }
    c.batch = nn::pack(std::span<const nn::Example>(exs));
    c.options = {rng() % 2 ? 1e-3 : 0.0, true};
    if (!near_kink(nn::forward(c.params, c.batch), c.batch, 1e-3)) return c;
  }
}

}  // namespace pwcn::testing
