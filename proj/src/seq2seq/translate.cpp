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

#include "ffr/seq2seq/translate.hpp"

#include <algorithm>
#include <exception>

#include "network_internal.hpp"

namespace ffr::seq2seq {

Decoded greedy_decode(const ModelParams& params, std::span<const TokenId> source_ids,
                      std::size_t max_len) {
  detail::check_example(params, source_ids, std::span<const TokenId>{});
  const std::size_t vocab = params.tgt_vocab();
  const detail::EncoderPass enc = detail::run_encoder(params, source_ids);
  std::vector<detail::Vec> state = enc.final_states;
  detail::DecoderStepCache cache;
  std::vector<double> logits(vocab);
  std::vector<double> rows;

  Decoded out;
  TokenId input = tokenizer::kSos;
  while (out.ids.size() < max_len) {
    detail::decoder_step(params, enc, state, input, cache, logits);
    rows.insert(rows.end(), cache.attention.weights.begin(), cache.attention.weights.end());
    input = static_cast<TokenId>(std::max_element(logits.begin(), logits.end()) - logits.begin());
    out.ids.push_back(input);
    if (input == tokenizer::kEos) break;
  }
  out.attention = Tensor::matrix(out.ids.size(), source_ids.size());
  std::copy(rows.begin(), rows.end(), out.attention.values().begin());
  return out;
}

Translation translate(const ModelParams& params, std::string_view sentence,
                      const tokenizer::Vocabulary& src_vocab, const tokenizer::Vocabulary& tgt_vocab,
                      std::size_t max_len, const tokenizer::TokenizerOptions& options) {
  const IdSequence src = tokenizer::encode_source(sentence, src_vocab, options);
  Decoded d = greedy_decode(params, src, max_len);
  Translation t;
  t.text = tokenizer::decode(d.ids, tgt_vocab);
  t.ids = std::move(d.ids);
  t.attention = std::move(d.attention);
  for (TokenId id : src) t.source_tokens.push_back(src_vocab.token(id));
  return t;
}

std::vector<IdSequence> decode_all(const ModelParams& params, std::span<const EncodedPair> data,
                                   std::size_t max_len, Execution exec) {
  std::vector<IdSequence> out(data.size());
  const auto n = static_cast<std::ptrdiff_t>(data.size());
  if (exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        const auto k = static_cast<std::size_t>(i);
        out[k] = greedy_decode(params, data[k].source_ids, max_len).ids;
      } catch (...) {
#pragma omp critical(ffr_decode_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::size_t k = 0; k < data.size(); ++k) {
      out[k] = greedy_decode(params, data[k].source_ids, max_len).ids;
    }
  }
  return out;
}

double token_accuracy(const ModelParams& params, std::span<const EncodedPair> data, Execution exec) {
  std::size_t max_len = 0;
  for (const auto& p : data) max_len = std::max(max_len, p.target_ids.size());
  const std::vector<IdSequence> hyps = decode_all(params, data, max_len, exec);
  std::size_t correct = 0, total = 0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const IdSequence& gold = data[k].target_ids;
    for (std::size_t i = 1; i < gold.size(); ++i) {
      ++total;
      if (i - 1 < hyps[k].size() && hyps[k][i - 1] == gold[i]) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace ffr::seq2seq
