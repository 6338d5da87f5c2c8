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
#include <string>
#include <vector>

#include "ffr/seq2seq/tensor.hpp"

namespace ffr::seq2seq {

/// Architecture of the GRU encoder-decoder. The defaults are the published
/// configuration: 512-d embeddings, 128-d GRUs and a 30-d attention layer.
struct ModelConfig {
  std::size_t embed_dim = 512;
  std::size_t hidden_dim = 128;
  std::size_t attn_dim = 30;
  std::size_t src_vocab = 0;
  std::size_t tgt_vocab = 0;
  std::size_t max_src_len = 128;
  std::size_t max_tgt_len = 128;
  /// Stacked GRU layers in both encoder and decoder.
  std::size_t num_layers = 1;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument if any dimension is zero.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

/// One GRU layer, h' = (1 - z) * h + z * h~ with
///   z  = sigmoid(x W_z + h U_z + b_z)
///   r  = sigmoid(x W_r + h U_r + b_r)
///   h~ = tanh(x W_h + (r * h) U_h + b_h)
struct GruWeights {
  Tensor W_z, W_r, W_h;  // input x hidden
  Tensor U_z, U_r, U_h;  // hidden x hidden
  Tensor b_z, b_r, b_h;  // hidden

  static GruWeights zeros(std::size_t input_dim, std::size_t hidden_dim);

  std::size_t input_dim() const noexcept { return W_z.rows(); }
  std::size_t hidden_dim() const noexcept { return U_z.rows(); }
};

/// Additive attention, score_t = v . tanh(enc_t W1 + dec W2).
struct AttentionWeights {
  Tensor W1;  // hidden x attn, applied to encoder states
  Tensor W2;  // hidden x attn, applied to the decoder state
  Tensor v;   // attn
};

struct OutputWeights {
  Tensor W;  // hidden x tgt_vocab
  Tensor b;  // tgt_vocab
};

/// Every trainable tensor. Gradients and optimizer moments reuse this type.
struct ModelParams {
  Tensor src_embedding;  // src_vocab x embed
  Tensor tgt_embedding;  // tgt_vocab x embed
  std::vector<GruWeights> encoder;
  /// Layer 0 consumes [embedding ; attention context].
  std::vector<GruWeights> decoder;
  AttentionWeights attention;
  OutputWeights output;

  /// All-zero parameters shaped for `cfg`.
  static ModelParams zeros(const ModelConfig& cfg);
  static ModelParams zeros_like(const ModelParams& other);

  std::size_t embed_dim() const noexcept { return src_embedding.cols(); }
  std::size_t hidden_dim() const noexcept { return encoder.front().hidden_dim(); }
  std::size_t attn_dim() const noexcept { return attention.v.size(); }
  std::size_t src_vocab() const noexcept { return src_embedding.rows(); }
  std::size_t tgt_vocab() const noexcept { return tgt_embedding.rows(); }
  std::size_t num_layers() const noexcept { return encoder.size(); }
  std::size_t parameter_count() const;

  /// Visits every tensor in a fixed order with a stable name such as
  /// "encoder.0.W_z". Checkpoints and optimizers rely on this order.
  template <typename F>
  void for_each(F&& f) {
    for_each_impl(*this, f);
  }
  template <typename F>
  void for_each(F&& f) const {
    for_each_impl(*this, f);
  }

  bool operator==(const ModelParams& other) const;

 private:
  template <typename Self, typename F>
  static void for_each_impl(Self& self, F& f) {
    f(std::string("src_embedding"), self.src_embedding);
    f(std::string("tgt_embedding"), self.tgt_embedding);
    auto gru = [&f](const std::string& prefix, auto& g) {
      f(prefix + "W_z", g.W_z);
      f(prefix + "W_r", g.W_r);
      f(prefix + "W_h", g.W_h);
      f(prefix + "U_z", g.U_z);
      f(prefix + "U_r", g.U_r);
      f(prefix + "U_h", g.U_h);
      f(prefix + "b_z", g.b_z);
      f(prefix + "b_r", g.b_r);
      f(prefix + "b_h", g.b_h);
    };
    for (std::size_t l = 0; l < self.encoder.size(); ++l) {
      gru("encoder." + std::to_string(l) + ".", self.encoder[l]);
    }
    for (std::size_t l = 0; l < self.decoder.size(); ++l) {
      gru("decoder." + std::to_string(l) + ".", self.decoder[l]);
    }
    f(std::string("attention.W1"), self.attention.W1);
    f(std::string("attention.W2"), self.attention.W2);
    f(std::string("attention.v"), self.attention.v);
    f(std::string("output.W"), self.output.W);
    f(std::string("output.b"), self.output.b);
  }
};

/// Uniform bound sqrt(6 / (fan_in + fan_out)) used by init_model for a
/// tensor of the given name and shape; 0 for biases.
double init_bound(const std::string& name, const Tensor& t);

/// Scaled-uniform initialization, deterministic in cfg.seed. Biases are zero.
ModelParams init_model(const ModelConfig& cfg);

/// True if every value of every tensor is finite.
bool all_finite(const ModelParams& params);

}  // namespace ffr::seq2seq
