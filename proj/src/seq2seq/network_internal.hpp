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

// Cached forward passes and their adjoints. Shared by training, gradient
// checking and greedy decoding.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffr/seq2seq/network.hpp"

namespace ffr::seq2seq::detail {

using Vec = std::vector<double>;

struct GruCache {
  Vec x, h_prev, z, r, h_tilde, h;
};

void gru_forward(std::span<const double> x, std::span<const double> h_prev, const GruWeights& w,
                 GruCache& c);

/// Accumulates parameter gradients into `g` and input gradients into `dx`
/// and `dh_prev` (both added to, not overwritten).
void gru_backward(const GruCache& c, const GruWeights& w, std::span<const double> dh, GruWeights& g,
                  std::span<double> dx, std::span<double> dh_prev);

struct AttentionCache {
  Vec query;    // decoder state the scores were computed from
  Tensor act;   // T x attn, tanh(keys + query W2)
  Vec weights;  // T
  Vec context;  // hidden
};

/// keys = encoder_states W1, precomputed once per source sentence.
Tensor attention_keys(const Tensor& encoder_states, const AttentionWeights& w);

/// An empty mask means every position is real.
void attention_forward(std::span<const double> query, const Tensor& encoder_states,
                       const Tensor& keys, std::span<const std::uint8_t> mask,
                       const AttentionWeights& w, AttentionCache& c);

void attention_backward(const AttentionCache& c, const Tensor& encoder_states,
                        const AttentionWeights& w, std::span<const double> d_context,
                        AttentionWeights& g, Tensor& d_encoder_states, std::span<double> d_query);

struct EncoderPass {
  std::vector<std::vector<GruCache>> steps;  // [t][layer]
  Tensor outputs;                            // T x hidden, top layer
  Tensor keys;                               // T x attn
  std::vector<Vec> final_states;             // [layer]
};

EncoderPass run_encoder(const ModelParams& p, std::span<const TokenId> src);

struct DecoderStepCache {
  TokenId input = 0;
  AttentionCache attention;
  std::vector<GruCache> layers;
  Vec probs;
};

/// Advances the decoder by one token. `state` holds one vector per layer and
/// is updated in place; `logits` receives the output scores.
void decoder_step(const ModelParams& p, const EncoderPass& enc, std::vector<Vec>& state,
                  TokenId input, DecoderStepCache& cache, std::span<double> logits);

/// Numerically stable softmax of `logits` into `probs`; returns log-sum-exp.
double softmax(std::span<const double> logits, std::span<double> probs);

struct ExampleOutputs {
  Tensor logits;     // steps x tgt_vocab
  Tensor attention;  // steps x src_len
};

/// Forward (and optionally backward) pass over one pair. Returns the summed
/// cross-entropy over the target positions. When `grad` is non-null it
/// receives grad_scale * d(summed loss)/d(params).
double run_example(const ModelParams& p, std::span<const TokenId> src,
                   std::span<const TokenId> tgt, double teacher_forcing, std::uint64_t seed,
                   double grad_scale, ModelParams* grad, ExampleOutputs* outputs);

/// Validates ids against the vocabularies; throws ShapeMismatch/AllMasked.
void check_example(const ModelParams& p, std::span<const TokenId> src,
                   std::span<const TokenId> tgt);

}  // namespace ffr::seq2seq::detail

namespace ffr::seq2seq {

/// Validates a batch and returns the number of predicted target positions.
/// Throws EmptyTarget when that number is zero.
std::size_t count_target_tokens(const ModelParams& p, const Batch& batch);

}  // namespace ffr::seq2seq
