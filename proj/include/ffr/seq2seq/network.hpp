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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffr/common/execution.hpp"
#include "ffr/seq2seq/model.hpp"
#include "ffr/tokenizer/tokenizer.hpp"

namespace ffr::seq2seq {

using tokenizer::EncodedPair;
using tokenizer::TokenId;

/// One GRU step. Throws ShapeMismatch when x or h_prev do not fit `w`.
std::vector<double> gru_cell(std::span<const double> x, std::span<const double> h_prev,
                             const GruWeights& w);

struct AttentionResult {
  std::vector<double> context;
  std::vector<double> weights;
};

/// Additive attention of one decoder state over T encoder states (rows of
/// `encoder_states`). Masked positions get weight 0. Throws AllMasked when
/// no position is unmasked and ShapeMismatch on inconsistent inputs.
AttentionResult attend(std::span<const double> decoder_state, const Tensor& encoder_states,
                       std::span<const std::uint8_t> mask, const AttentionWeights& w);

/// A right-padded batch of encoded pairs.
struct Batch {
  tokenizer::PaddedBatch source;
  tokenizer::PaddedBatch target;

  std::size_t size() const noexcept { return source.rows; }
};

Batch make_batch(std::span<const EncodedPair> pairs);

struct ForwardOptions {
  /// Probability of feeding the gold previous token rather than the model's
  /// own argmax prediction.
  double teacher_forcing = 1.0;
  /// Seeds the teacher-forcing draws; example i uses an independent stream.
  std::uint64_t seed = 0;
};

struct ForwardResult {
  /// Mean token cross-entropy over every predicted target position.
  double loss = 0.0;
  std::size_t tokens = 0;
  /// Per example: [target_len - 1] x tgt_vocab.
  std::vector<Tensor> logits;
  /// Per example: [target_len - 1] x source_len, rows are simplices.
  std::vector<Tensor> attention;
};

/// Throws EmptyTarget when the batch has no target position to predict,
/// ShapeMismatch for token ids outside the vocabularies or rows whose
/// masks are not a prefix, and AllMasked for an empty source row.
ForwardResult forward(const ModelParams& params, const Batch& batch,
                      const ForwardOptions& options = {});

struct GradientResult {
  double loss = 0.0;
  std::size_t tokens = 0;
  /// d(mean loss)/d(params).
  ModelParams gradient;
};

/// Analytic gradient of the forward loss by backpropagation through time.
///
/// The serial path accumulates examples in batch order. The parallel path
/// gives each of a fixed number of contiguous example chunks its own buffer
/// and sums the chunks in chunk order, so its result does not depend on the
/// OpenMP thread count. Throws NonFiniteGradient.
GradientResult backward(const ModelParams& params, const Batch& batch,
                        const ForwardOptions& options = {}, Execution exec = Execution::Serial);

/// Number of chunk buffers the parallel gradient path reduces over.
inline constexpr std::size_t kGradientChunks = 8;

double global_norm(const ModelParams& grad);

/// Rescales `grad` so its global L2 norm is at most max_norm. Returns the
/// norm before clipping.
double clip_global_norm(ModelParams& grad, double max_norm);

}  // namespace ffr::seq2seq
