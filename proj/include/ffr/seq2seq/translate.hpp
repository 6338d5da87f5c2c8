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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffr/common/execution.hpp"
#include "ffr/seq2seq/model.hpp"
#include "ffr/tokenizer/tokenizer.hpp"

namespace ffr::seq2seq {

using tokenizer::EncodedPair;
using tokenizer::IdSequence;
using tokenizer::TokenId;

struct Decoded {
  /// Emitted ids, ending with kEos unless max_len was reached.
  IdSequence ids;
  /// One row per emitted id (EOS included), each a simplex over the source.
  Tensor attention;
};

/// Greedy argmax decoding from SOS until EOS or max_len emitted ids.
Decoded greedy_decode(const ModelParams& params, std::span<const TokenId> source_ids,
                      std::size_t max_len);

struct Translation {
  std::string text;
  IdSequence ids;
  Tensor attention;
  /// Source tokens seen by the encoder, including the trailing <eos>.
  std::vector<std::string> source_tokens;
};

Translation translate(const ModelParams& params, std::string_view sentence,
                      const tokenizer::Vocabulary& src_vocab, const tokenizer::Vocabulary& tgt_vocab,
                      std::size_t max_len, const tokenizer::TokenizerOptions& options = {});

/// Fraction of gold target positions (everything after SOS, EOS included)
/// that greedy decoding reproduces at the same position.
double token_accuracy(const ModelParams& params, std::span<const EncodedPair> data,
                      Execution exec = Execution::Serial);

/// Greedy hypotheses for a dataset, in order.
std::vector<IdSequence> decode_all(const ModelParams& params, std::span<const EncodedPair> data,
                                   std::size_t max_len, Execution exec = Execution::Serial);

}  // namespace ffr::seq2seq
