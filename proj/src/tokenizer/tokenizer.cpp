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

#include "ffr/common/error.hpp"
#include "ffr/textnorm/unicode.hpp"
#include "ffr/tokenizer/tokenizer.hpp"

namespace ffr::tokenizer {

std::vector<std::string> tokenize(std::string_view sentence, const TokenizerOptions& options) {
  auto tokens = unicode::split_whitespace(sentence);
  if (options.lowercase) {
    for (auto& t : tokens) t = unicode::to_lower(t);
  }
  return tokens;
}

IdSequence encode(std::string_view sentence, const Vocabulary& vocab, bool wrap,
                  const TokenizerOptions& options) {
  const auto tokens = tokenize(sentence, options);
  IdSequence ids;
  ids.reserve(tokens.size() + 2);
  if (wrap) ids.push_back(kSos);
  for (const auto& t : tokens) ids.push_back(vocab.id(t));
  if (wrap) ids.push_back(kEos);
  return ids;
}

IdSequence encode_source(std::string_view sentence, const Vocabulary& vocab,
                         const TokenizerOptions& options, std::size_t max_len) {
  IdSequence ids = encode(sentence, vocab, false, options);
  if (max_len == 0) max_len = 1;
  if (ids.size() > max_len - 1) ids.resize(max_len - 1);
  ids.push_back(kEos);
  return ids;
}

EncodedPair encode_pair(std::string_view source, std::string_view target, const Vocabulary& src_vocab,
                        const Vocabulary& tgt_vocab, const TokenizerOptions& options,
                        std::size_t max_src_len, std::size_t max_tgt_len) {
  EncodedPair pair;
  pair.source_ids = encode_source(source, src_vocab, options, max_src_len);
  pair.target_ids = encode(target, tgt_vocab, true, options);
  if (max_tgt_len < 2) max_tgt_len = 2;
  if (pair.target_ids.size() > max_tgt_len) {
    pair.target_ids.resize(max_tgt_len - 1);
    pair.target_ids.push_back(kEos);
  }
  return pair;
}

std::string decode(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : ids) {
    if (id == kEos) break;
    if (id == kPad || id == kSos) continue;
    if (!out.empty()) out += ' ';
    out += vocab.token(id);
  }
  return out;
}

std::size_t PaddedBatch::length(std::size_t r) const {
  const auto begin = mask.begin() + static_cast<std::ptrdiff_t>(r * cols);
  return static_cast<std::size_t>(
      std::find(begin, begin + static_cast<std::ptrdiff_t>(cols), std::uint8_t{0}) - begin);
}

PaddedBatch pad_batch(std::span<const IdSequence> sequences, std::optional<std::size_t> pad_to) {
  std::size_t longest = 0;
  for (const auto& s : sequences) longest = std::max(longest, s.size());
  const std::size_t width = pad_to.value_or(longest);
  if (longest > width) {
    throw Error(Errc::SequenceTooLong, "sequence of length " + std::to_string(longest) +
                                           " does not fit padded width " + std::to_string(width));
  }
  PaddedBatch batch;
  batch.rows = sequences.size();
  batch.cols = width;
  batch.ids.assign(batch.rows * width, kPad);
  batch.mask.assign(batch.rows * width, 0);
  for (std::size_t r = 0; r < sequences.size(); ++r) {
    std::copy(sequences[r].begin(), sequences[r].end(), batch.ids.begin() + static_cast<std::ptrdiff_t>(r * width));
    std::fill_n(batch.mask.begin() + static_cast<std::ptrdiff_t>(r * width), sequences[r].size(), std::uint8_t{1});
  }
  return batch;
}

}  // namespace ffr::tokenizer
