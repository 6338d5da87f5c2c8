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

// Independent reference computations used by the unit and acceptance tests.
// They share no code with the library beyond the parameter containers and
// are written for obviousness, not speed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ffr/seq2seq/model.hpp"

namespace ffr::oracle {

using Words = std::vector<std::string>;

// ---------------------------------------------------------------------------
// n-gram metrics by direct enumeration

inline Words gram_at(const Words& s, std::size_t i, std::size_t n) {
  return Words(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + n));
}

inline std::size_t occurrences(const Words& s, const Words& gram) {
  std::size_t c = 0;
  for (std::size_t i = 0; i + gram.size() <= s.size(); ++i) {
    if (gram_at(s, i, gram.size()) == gram) ++c;
  }
  return c;
}

inline std::size_t grams(const Words& s, std::size_t n) { return s.size() >= n ? s.size() - n + 1 : 0; }

/// Clipped matches: each distinct hypothesis n-gram (first occurrence)
/// contributes min(count in hyp, count in ref).
inline std::size_t clipped(const Words& ref, const Words& hyp, std::size_t n) {
  std::size_t m = 0;
  for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
    const Words g = gram_at(hyp, i, n);
    bool first = true;
    for (std::size_t j = 0; j < i; ++j) {
      if (gram_at(hyp, j, n) == g) first = false;
    }
    if (first) m += std::min(occurrences(hyp, g), occurrences(ref, g));
  }
  return m;
}

inline double bleu_from(const std::vector<double>& num, const std::vector<double>& den, double hyp_len,
                        double ref_len) {
  double log_sum = 0.0;
  for (std::size_t k = 0; k < num.size(); ++k) {
    if (den[k] == 0.0 || num[k] == 0.0) return 0.0;
    log_sum += std::log(num[k] / den[k]);
  }
  if (hyp_len == 0.0) return 0.0;
  const double bp = hyp_len >= ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  return bp * std::exp(log_sum / static_cast<double>(num.size()));
}

inline double bleu_corpus(const std::vector<Words>& refs, const std::vector<Words>& hyps, std::size_t max_n = 4) {
  std::vector<double> num(max_n, 0.0), den(max_n, 0.0);
  double h = 0.0, r = 0.0;
  for (std::size_t s = 0; s < refs.size(); ++s) {
    h += static_cast<double>(hyps[s].size());
    r += static_cast<double>(refs[s].size());
    for (std::size_t n = 1; n <= max_n; ++n) {
      num[n - 1] += static_cast<double>(clipped(refs[s], hyps[s], n));
      den[n - 1] += static_cast<double>(grams(hyps[s], n));
    }
  }
  return bleu_from(num, den, h, r);
}

inline double bleu_sentence(const Words& ref, const Words& hyp, bool add_one_2plus, std::size_t max_n = 4) {
  std::vector<double> num(max_n), den(max_n);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const double extra = add_one_2plus && n >= 2 ? 1.0 : 0.0;
    num[n - 1] = static_cast<double>(clipped(ref, hyp, n)) + extra;
    den[n - 1] = static_cast<double>(grams(hyp, n)) + extra;
  }
  return bleu_from(num, den, static_cast<double>(hyp.size()), static_cast<double>(ref.size()));
}

inline double gleu_sentence(const Words& ref, const Words& hyp, std::size_t min_n = 1, std::size_t max_n = 4) {
  double m = 0.0, h = 0.0, r = 0.0;
  for (std::size_t n = min_n; n <= max_n; ++n) {
    m += static_cast<double>(clipped(ref, hyp, n));
    h += static_cast<double>(grams(hyp, n));
    r += static_cast<double>(grams(ref, n));
  }
  if (h == 0.0 || r == 0.0) return 0.0;
  return std::min(m / h, m / r);
}

// ---------------------------------------------------------------------------
// Network pieces, one scalar at a time. Weight matrices are [in x out].

using Vec = std::vector<double>;

inline double sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

/// sum_i x[i] * W(i, j)
inline double column(const Vec& x, const seq2seq::Tensor& W, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * W(i, j);
  return s;
}

inline Vec gru(const Vec& x, const Vec& h, const seq2seq::GruWeights& w) {
  const std::size_t n = h.size();
  Vec z(n), r(n), rh(n), out(n);
  for (std::size_t j = 0; j < n; ++j) {
    z[j] = sigmoid(column(x, w.W_z, j) + column(h, w.U_z, j) + w.b_z[j]);
    r[j] = sigmoid(column(x, w.W_r, j) + column(h, w.U_r, j) + w.b_r[j]);
  }
  for (std::size_t j = 0; j < n; ++j) rh[j] = r[j] * h[j];
  for (std::size_t j = 0; j < n; ++j) {
    const double cand = std::tanh(column(x, w.W_h, j) + column(rh, w.U_h, j) + w.b_h[j]);
    out[j] = (1.0 - z[j]) * h[j] + z[j] * cand;
  }
  return out;
}

struct Attention {
  Vec context;
  Vec weights;
};

/// Softmax over v . tanh(enc_t W1 + dec W2), computed without shifting.
inline Attention attend(const Vec& dec, const std::vector<Vec>& enc, const seq2seq::AttentionWeights& w) {
  const std::size_t a = w.v.size();
  Vec scores(enc.size());
  for (std::size_t t = 0; t < enc.size(); ++t) {
    double s = 0.0;
    for (std::size_t k = 0; k < a; ++k) s += w.v[k] * std::tanh(column(enc[t], w.W1, k) + column(dec, w.W2, k));
    scores[t] = s;
  }
  double z = 0.0;
  for (double s : scores) z += std::exp(s);
  Attention out;
  out.context.assign(dec.size(), 0.0);
  for (std::size_t t = 0; t < enc.size(); ++t) {
    out.weights.push_back(std::exp(scores[t]) / z);
    for (std::size_t j = 0; j < dec.size(); ++j) out.context[j] += out.weights[t] * enc[t][j];
  }
  return out;
}

inline Vec row_of(const seq2seq::Tensor& t, std::int32_t r) {
  Vec v(t.cols());
  for (std::size_t j = 0; j < t.cols(); ++j) v[j] = t(static_cast<std::size_t>(r), j);
  return v;
}

/// Summed teacher-forced cross-entropy of one pair: encoder over src, decoder
/// fed tgt[0..n-2] predicting tgt[1..n-1], attention from the previous
/// top-layer state, decoder layer 0 reading [embedding ; context].
inline double pair_loss(const seq2seq::ModelParams& p, const std::vector<std::int32_t>& src,
                        const std::vector<std::int32_t>& tgt) {
  const std::size_t layers = p.encoder.size();
  const std::size_t hidden = p.encoder[0].U_z.rows();
  std::vector<Vec> state(layers, Vec(hidden, 0.0));
  std::vector<Vec> enc;
  for (std::int32_t id : src) {
    Vec x = row_of(p.src_embedding, id);
    for (std::size_t l = 0; l < layers; ++l) {
      state[l] = gru(x, state[l], p.encoder[l]);
      x = state[l];
    }
    enc.push_back(x);
  }
  double loss = 0.0;
  for (std::size_t i = 0; i + 1 < tgt.size(); ++i) {
    const Attention att = attend(state.back(), enc, p.attention);
    Vec x = row_of(p.tgt_embedding, tgt[i]);
    x.insert(x.end(), att.context.begin(), att.context.end());
    for (std::size_t l = 0; l < layers; ++l) {
      state[l] = gru(x, state[l], p.decoder[l]);
      x = state[l];
    }
    const std::size_t vocab = p.output.b.size();
    Vec logits(vocab);
    for (std::size_t k = 0; k < vocab; ++k) logits[k] = column(x, p.output.W, k) + p.output.b[k];
    double z = 0.0;
    for (double l : logits) z += std::exp(l);
    loss += std::log(z) - logits[static_cast<std::size_t>(tgt[i + 1])];
  }
  return loss;
}

}  // namespace ffr::oracle
