// Copyright 2026 The FFR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include "ffr/common/error.hpp"
#include "seq2seq/network_internal.hpp"

namespace ffr::seq2seq {
namespace detail {

Tensor attention_keys(const Tensor& encoder_states, const AttentionWeights& w) {
  Tensor keys = Tensor::matrix(encoder_states.rows(), w.W1.cols());
  for (std::size_t t = 0; t < encoder_states.rows(); ++t) {
    kernels::matvec_acc(encoder_states.row(t), w.W1, keys.row(t));
  }
  return keys;
}

void attention_forward(std::span<const double> query, const Tensor& encoder_states,
                       const Tensor& keys, std::span<const std::uint8_t> mask,
                       const AttentionWeights& w, AttentionCache& c) {
  const std::size_t steps = encoder_states.rows();
  const std::size_t a = w.v.size();
  c.query.assign(query.begin(), query.end());

  Vec q(a, 0.0);
  kernels::matvec_acc(query, w.W2, q);

  c.act = Tensor::matrix(steps, a);
  Vec scores(steps, -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < steps; ++t) {
    auto act = c.act.row(t);
    const auto key = keys.row(t);
    for (std::size_t k = 0; k < a; ++k) act[k] = std::tanh(key[k] + q[k]);
    if (!mask.empty() && mask[t] == 0) continue;
    scores[t] = kernels::dot(w.v.values(), act);
    best = std::max(best, scores[t]);
  }
  if (!std::isfinite(best)) throw Error(Errc::AllMasked, "attention over a fully masked source");

  c.weights.assign(steps, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    if (!mask.empty() && mask[t] == 0) continue;
    c.weights[t] = std::exp(scores[t] - best);
    total += c.weights[t];
  }
  c.context.assign(encoder_states.cols(), 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    c.weights[t] /= total;
    if (c.weights[t] != 0.0) kernels::axpy(c.weights[t], encoder_states.row(t), c.context);
  }
}

void attention_backward(const AttentionCache& c, const Tensor& encoder_states,
                        const AttentionWeights& w, std::span<const double> d_context,
                        AttentionWeights& g, Tensor& d_encoder_states, std::span<double> d_query) {
  const std::size_t steps = encoder_states.rows();
  const std::size_t a = w.v.size();

  // context = sum_t weights_t enc_t
  Vec d_weights(steps);
  double weighted = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    d_weights[t] = kernels::dot(d_context, encoder_states.row(t));
    weighted += c.weights[t] * d_weights[t];
    kernels::axpy(c.weights[t], d_context, d_encoder_states.row(t));
  }

  // Softmax adjoint, then score_t = v . tanh(key_t + q).
  Vec dq(a, 0.0), d_pre(a);
  for (std::size_t t = 0; t < steps; ++t) {
    const double d_score = c.weights[t] * (d_weights[t] - weighted);
    if (d_score == 0.0) continue;
    const auto act = c.act.row(t);
    for (std::size_t k = 0; k < a; ++k) {
      g.v[k] += d_score * act[k];
      d_pre[k] = d_score * w.v[k] * (1.0 - act[k] * act[k]);
      dq[k] += d_pre[k];
    }
    kernels::outer_acc(encoder_states.row(t), d_pre, g.W1);
    kernels::matvec_t_acc(w.W1, d_pre, d_encoder_states.row(t));
  }
  kernels::outer_acc(c.query, dq, g.W2);
  kernels::matvec_t_acc(w.W2, dq, d_query);
}

}  // namespace detail

AttentionResult attend(std::span<const double> decoder_state, const Tensor& encoder_states,
                       std::span<const std::uint8_t> mask, const AttentionWeights& w) {
  if (encoder_states.rank() != 2 || encoder_states.rows() == 0) {
    throw Error(Errc::AllMasked, "attention needs at least one encoder state");
  }
  if (encoder_states.cols() != w.W1.rows() || decoder_state.size() != w.W2.rows() ||
      (!mask.empty() && mask.size() != encoder_states.rows())) {
    throw Error(Errc::ShapeMismatch, "attention inputs do not match the attention weights");
  }
  detail::AttentionCache c;
  detail::attention_forward(decoder_state, encoder_states, detail::attention_keys(encoder_states, w),
                            mask, w, c);
  return {std::move(c.context), std::move(c.weights)};
}

}  // namespace ffr::seq2seq
