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

#include "ffr/seq2seq/model.hpp"

#include <cmath>

#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"

namespace ffr::seq2seq {

void ModelConfig::validate() const {
  if (embed_dim == 0 || hidden_dim == 0 || attn_dim == 0 || src_vocab == 0 || tgt_vocab == 0 ||
      max_src_len == 0 || max_tgt_len == 0 || num_layers == 0) {
    throw Error(Errc::InvalidArgument, "model dimensions, vocabularies and layer count must be >= 1");
  }
}

GruWeights GruWeights::zeros(std::size_t input_dim, std::size_t hidden_dim) {
  GruWeights g;
  for (Tensor* w : {&g.W_z, &g.W_r, &g.W_h}) *w = Tensor::matrix(input_dim, hidden_dim);
  for (Tensor* u : {&g.U_z, &g.U_r, &g.U_h}) *u = Tensor::matrix(hidden_dim, hidden_dim);
  for (Tensor* b : {&g.b_z, &g.b_r, &g.b_h}) *b = Tensor::vector(hidden_dim);
  return g;
}

ModelParams ModelParams::zeros(const ModelConfig& cfg) {
  cfg.validate();
  ModelParams p;
  p.src_embedding = Tensor::matrix(cfg.src_vocab, cfg.embed_dim);
  p.tgt_embedding = Tensor::matrix(cfg.tgt_vocab, cfg.embed_dim);
  for (std::size_t l = 0; l < cfg.num_layers; ++l) {
    p.encoder.push_back(GruWeights::zeros(l == 0 ? cfg.embed_dim : cfg.hidden_dim, cfg.hidden_dim));
    p.decoder.push_back(GruWeights::zeros(l == 0 ? cfg.embed_dim + cfg.hidden_dim : cfg.hidden_dim,
                                          cfg.hidden_dim));
  }
  p.attention.W1 = Tensor::matrix(cfg.hidden_dim, cfg.attn_dim);
  p.attention.W2 = Tensor::matrix(cfg.hidden_dim, cfg.attn_dim);
  p.attention.v = Tensor::vector(cfg.attn_dim);
  p.output.W = Tensor::matrix(cfg.hidden_dim, cfg.tgt_vocab);
  p.output.b = Tensor::vector(cfg.tgt_vocab);
  return p;
}

ModelParams ModelParams::zeros_like(const ModelParams& other) {
  ModelParams p = other;
  p.for_each([](const std::string&, Tensor& t) { t.fill(0.0); });
  return p;
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for_each([&n](const std::string&, const Tensor& t) { n += t.size(); });
  return n;
}

bool ModelParams::operator==(const ModelParams& other) const {
  std::vector<const Tensor*> mine, theirs;
  for_each([&](const std::string&, const Tensor& t) { mine.push_back(&t); });
  other.for_each([&](const std::string&, const Tensor& t) { theirs.push_back(&t); });
  if (mine.size() != theirs.size()) return false;
  for (std::size_t i = 0; i < mine.size(); ++i) {
    if (!(*mine[i] == *theirs[i])) return false;
  }
  return true;
}

double init_bound(const std::string& name, const Tensor& t) {
  if (t.rank() == 2) return std::sqrt(6.0 / static_cast<double>(t.rows() + t.cols()));
  if (name == "attention.v") return std::sqrt(6.0 / static_cast<double>(t.size() + 1));
  return 0.0;
}

ModelParams init_model(const ModelConfig& cfg) {
  ModelParams p = ModelParams::zeros(cfg);
  Rng rng(cfg.seed);
  p.for_each([&rng](const std::string& name, Tensor& t) {
    const double bound = init_bound(name, t);
    if (bound == 0.0) return;
    for (double& v : t.values()) v = rng.uniform(-bound, bound);
  });
  return p;
}

bool all_finite(const ModelParams& params) {
  bool ok = true;
  params.for_each([&ok](const std::string&, const Tensor& t) {
    for (double v : t.values()) {
      if (!std::isfinite(v)) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

}  // namespace ffr::seq2seq
