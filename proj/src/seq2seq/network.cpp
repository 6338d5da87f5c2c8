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

#include <algorithm>
#include <cmath>

#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"
#include "seq2seq/network_internal.hpp"

namespace ffr::seq2seq {
namespace detail {

double softmax(std::span<const double> logits, std::span<double> probs) {
  const double best = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - best);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return best + std::log(total);
}

EncoderPass run_encoder(const ModelParams& p, std::span<const TokenId> src) {
  const std::size_t layers = p.num_layers();
  const std::size_t hidden = p.hidden_dim();
  EncoderPass enc;
  enc.steps.resize(src.size(), std::vector<GruCache>(layers));
  enc.outputs = Tensor::matrix(src.size(), hidden);
  enc.final_states.assign(layers, Vec(hidden, 0.0));

  for (std::size_t t = 0; t < src.size(); ++t) {
    std::span<const double> x = p.src_embedding.row(static_cast<std::size_t>(src[t]));
    for (std::size_t l = 0; l < layers; ++l) {
      GruCache& c = enc.steps[t][l];
      gru_forward(x, enc.final_states[l], p.encoder[l], c);
      enc.final_states[l] = c.h;
      x = c.h;
    }
    std::copy(x.begin(), x.end(), enc.outputs.row(t).begin());
  }
  enc.keys = attention_keys(enc.outputs, p.attention);
  return enc;
}

void decoder_step(const ModelParams& p, const EncoderPass& enc, std::vector<Vec>& state,
                  TokenId input, DecoderStepCache& cache, std::span<double> logits) {
  const std::size_t layers = p.num_layers();
  const std::size_t embed = p.embed_dim();
  cache.input = input;
  cache.layers.resize(layers);

  // Attention is computed from the previous top-layer state, before the cell.
  attention_forward(state.back(), enc.outputs, enc.keys, {}, p.attention, cache.attention);

  Vec x0(embed + p.hidden_dim());
  const auto emb = p.tgt_embedding.row(static_cast<std::size_t>(input));
  std::copy(emb.begin(), emb.end(), x0.begin());
  std::copy(cache.attention.context.begin(), cache.attention.context.end(),
            x0.begin() + static_cast<std::ptrdiff_t>(embed));

  std::span<const double> x = x0;
  for (std::size_t l = 0; l < layers; ++l) {
    gru_forward(x, state[l], p.decoder[l], cache.layers[l]);
    state[l] = cache.layers[l].h;
    x = cache.layers[l].h;
  }

  std::copy(p.output.b.values().begin(), p.output.b.values().end(), logits.begin());
  kernels::matvec_acc(x, p.output.W, logits);
}

void check_example(const ModelParams& p, std::span<const TokenId> src,
                   std::span<const TokenId> tgt) {
  if (src.empty()) throw Error(Errc::AllMasked, "source sequence has no unmasked position");
  for (TokenId id : src) {
    if (id < 0 || static_cast<std::size_t>(id) >= p.src_vocab()) {
      throw Error(Errc::ShapeMismatch, "source id " + std::to_string(id) + " outside vocabulary of " +
                                           std::to_string(p.src_vocab()));
    }
  }
  for (TokenId id : tgt) {
    if (id < 0 || static_cast<std::size_t>(id) >= p.tgt_vocab()) {
      throw Error(Errc::ShapeMismatch, "target id " + std::to_string(id) + " outside vocabulary of " +
                                           std::to_string(p.tgt_vocab()));
    }
  }
}

double run_example(const ModelParams& p, std::span<const TokenId> src,
                   std::span<const TokenId> tgt, double teacher_forcing, std::uint64_t seed,
                   double grad_scale, ModelParams* grad, ExampleOutputs* outputs) {
  const std::size_t layers = p.num_layers();
  const std::size_t hidden = p.hidden_dim();
  const std::size_t embed = p.embed_dim();
  const std::size_t vocab = p.tgt_vocab();
  const std::size_t steps = tgt.size() - 1;

  EncoderPass enc = run_encoder(p, src);
  std::vector<Vec> state = enc.final_states;
  std::vector<DecoderStepCache> caches(steps);
  Vec logits(vocab);
  Rng rng(seed);
  if (outputs) {
    outputs->logits = Tensor::matrix(steps, vocab);
    outputs->attention = Tensor::matrix(steps, src.size());
  }

  double loss = 0.0;
  TokenId input = tgt[0];
  for (std::size_t i = 0; i < steps; ++i) {
    if (i > 0) {
      // Teacher forcing draws happen only when they can change the input.
      const bool use_gold = teacher_forcing >= 1.0 || rng.bernoulli(teacher_forcing);
      input = use_gold ? tgt[i]
                       : static_cast<TokenId>(std::max_element(caches[i - 1].probs.begin(),
                                                               caches[i - 1].probs.end()) -
                                              caches[i - 1].probs.begin());
    }
    DecoderStepCache& c = caches[i];
    decoder_step(p, enc, state, input, c, logits);
    c.probs.resize(vocab);
    const double lse = softmax(logits, c.probs);
    loss += lse - logits[static_cast<std::size_t>(tgt[i + 1])];
    if (outputs) {
      std::copy(logits.begin(), logits.end(), outputs->logits.row(i).begin());
      std::copy(c.attention.weights.begin(), c.attention.weights.end(),
                outputs->attention.row(i).begin());
    }
  }
  if (!grad) return loss;

  // Backpropagation through the decoder, newest step first. ds[l] is the
  // gradient reaching decoder state l at the current step.
  ModelParams& g = *grad;
  std::vector<Vec> ds(layers, Vec(hidden, 0.0));
  std::vector<Vec> ds_prev(layers, Vec(hidden, 0.0));
  Tensor d_enc = Tensor::matrix(src.size(), hidden);
  Vec d_logits(vocab);
  for (std::size_t i = steps; i-- > 0;) {
    const DecoderStepCache& c = caches[i];
    for (std::size_t k = 0; k < vocab; ++k) d_logits[k] = grad_scale * c.probs[k];
    d_logits[static_cast<std::size_t>(tgt[i + 1])] -= grad_scale;

    const Vec& top = c.layers.back().h;
    kernels::outer_acc(top, d_logits, g.output.W);
    kernels::axpy(1.0, d_logits, g.output.b.values());
    kernels::matvec_t_acc(p.output.W, d_logits, ds[layers - 1]);

    Vec dx;
    for (std::size_t l = layers; l-- > 0;) {
      dx.assign(p.decoder[l].input_dim(), 0.0);
      std::fill(ds_prev[l].begin(), ds_prev[l].end(), 0.0);
      gru_backward(c.layers[l], p.decoder[l], ds[l], g.decoder[l], dx, ds_prev[l]);
      if (l > 0) kernels::axpy(1.0, dx, ds[l - 1]);
    }
    // dx now belongs to layer 0's input [embedding ; context].
    kernels::axpy(1.0, std::span<const double>(dx).first(embed),
                  g.tgt_embedding.row(static_cast<std::size_t>(c.input)));
    attention_backward(c.attention, enc.outputs, p.attention,
                       std::span<const double>(dx).subspan(embed), g.attention, d_enc,
                       ds_prev[layers - 1]);
    std::swap(ds, ds_prev);
  }

  // The attention keys were enc W1; their gradient flowed into d_enc and
  // g.attention.W1 inside attention_backward. ds is now the gradient at the
  // decoder's initial state, i.e. the encoder's final states.
  Vec dx;
  for (std::size_t t = src.size(); t-- > 0;) {
    kernels::axpy(1.0, d_enc.row(t), ds[layers - 1]);
    for (std::size_t l = layers; l-- > 0;) {
      dx.assign(p.encoder[l].input_dim(), 0.0);
      std::fill(ds_prev[l].begin(), ds_prev[l].end(), 0.0);
      gru_backward(enc.steps[t][l], p.encoder[l], ds[l], g.encoder[l], dx, ds_prev[l]);
      if (l > 0) kernels::axpy(1.0, dx, ds[l - 1]);
    }
    kernels::axpy(1.0, dx, g.src_embedding.row(static_cast<std::size_t>(src[t])));
    std::swap(ds, ds_prev);
  }
  return loss;
}

}  // namespace detail

Batch make_batch(std::span<const EncodedPair> pairs) {
  std::vector<tokenizer::IdSequence> src, tgt;
  src.reserve(pairs.size());
  tgt.reserve(pairs.size());
  for (const auto& p : pairs) {
    src.push_back(p.source_ids);
    tgt.push_back(p.target_ids);
  }
  return Batch{tokenizer::pad_batch(src), tokenizer::pad_batch(tgt)};
}

namespace {

void check_prefix_mask(const tokenizer::PaddedBatch& b, std::size_t r, const char* side) {
  const std::size_t len = b.length(r);
  for (std::size_t c = len; c < b.cols; ++c) {
    if (b.real(r, c)) {
      throw Error(Errc::ShapeMismatch, std::string(side) + " row " + std::to_string(r) +
                                           " is not right-padded");
    }
  }
}

}  // namespace

std::size_t count_target_tokens(const ModelParams& p, const Batch& batch) {
  if (batch.source.rows != batch.target.rows) {
    throw Error(Errc::ShapeMismatch, "source and target batches differ in row count");
  }
  std::size_t tokens = 0;
  for (std::size_t r = 0; r < batch.size(); ++r) {
    check_prefix_mask(batch.source, r, "source");
    check_prefix_mask(batch.target, r, "target");
    const auto tgt = batch.target.row(r);
    detail::check_example(p, batch.source.row(r), tgt);
    if (tgt.size() >= 2) tokens += tgt.size() - 1;
  }
  if (tokens == 0) throw Error(Errc::EmptyTarget, "batch has no target token to predict");
  return tokens;
}

ForwardResult forward(const ModelParams& params, const Batch& batch, const ForwardOptions& options) {
  ForwardResult result;
  result.tokens = count_target_tokens(params, batch);
  double total = 0.0;
  result.logits.resize(batch.size());
  result.attention.resize(batch.size());
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const auto tgt = batch.target.row(r);
    if (tgt.size() < 2) continue;
    detail::ExampleOutputs out;
    total += detail::run_example(params, batch.source.row(r), tgt, options.teacher_forcing,
                                 mix_seed(options.seed, r), 0.0, nullptr, &out);
    result.logits[r] = std::move(out.logits);
    result.attention[r] = std::move(out.attention);
  }
  result.loss = total / static_cast<double>(result.tokens);
  return result;
}

}  // namespace ffr::seq2seq
