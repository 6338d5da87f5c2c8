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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ffr::tokenizer {

using TokenId = std::int32_t;
using IdSequence = std::vector<TokenId>;

inline constexpr TokenId kPad = 0;
inline constexpr TokenId kSos = 1;
inline constexpr TokenId kEos = 2;
inline constexpr TokenId kUnk = 3;
inline constexpr std::size_t kNumSpecials = 4;

struct TokenizerOptions {
  bool lowercase = true;
};

/// Whitespace-only word tokenization. No punctuation or other characters
/// are filtered out; only case folding is optional.
std::vector<std::string> tokenize(std::string_view sentence, const TokenizerOptions& options = {});

struct VocabOptions {
  std::size_t min_freq = 1;
  /// Upper bound on the vocabulary size including the four specials.
  std::optional<std::size_t> max_size;
  TokenizerOptions tokenizer;
};

class Vocabulary {
 public:
  /// Counts tokens over `sentences`, orders them by frequency (ties by first
  /// occurrence), drops those under min_freq and truncates to max_size.
  /// Throws EmptyCorpus for no sentences, InvalidArgument for min_freq 0 or a
  /// max_size that cannot hold the specials.
  static Vocabulary build(std::span<const std::string> sentences, const VocabOptions& options = {});

  /// Builds from explicit tokens (ids 4, 5, ...) with optional counts.
  static Vocabulary from_tokens(std::vector<std::string> tokens,
                                std::vector<std::size_t> counts = {});

  std::size_t size() const noexcept { return kNumSpecials + tokens_.size(); }

  /// Id of a regular token, or kUnk.
  TokenId id(std::string_view token) const;
  bool contains(std::string_view token) const;

  /// Display string for any id; specials render as <pad>, <sos>, <eos>, <unk>.
  const std::string& token(TokenId id) const;

  std::size_t frequency(std::string_view token) const;

  /// Regular tokens only, index i has id 4 + i.
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  std::string to_json() const;
  static Vocabulary from_json(std::string_view json);

  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_ && counts_ == other.counts_;
  }

 private:
  void index();

  std::vector<std::string> tokens_;
  std::vector<std::size_t> counts_;
  std::unordered_map<std::string, TokenId> lookup_;
};

/// Maps a sentence to ids; unknown tokens become kUnk. With `wrap` the
/// sequence is framed by kSos ... kEos.
IdSequence encode(std::string_view sentence, const Vocabulary& vocab, bool wrap,
                  const TokenizerOptions& options = {});

/// Joins tokens with single spaces, skipping PAD/SOS and stopping at EOS.
std::string decode(std::span<const TokenId> ids, const Vocabulary& vocab);

/// Model-ready integer form of a sentence pair.
struct EncodedPair {
  IdSequence source_ids;  // tokens then kEos
  IdSequence target_ids;  // kSos, tokens, kEos

  bool operator==(const EncodedPair&) const = default;
};

/// Source ids for the encoder: the sentence's ids followed by kEos, keeping
/// at most max_len - 1 tokens so the total stays within max_len.
IdSequence encode_source(std::string_view sentence, const Vocabulary& vocab,
                         const TokenizerOptions& options = {},
                         std::size_t max_len = static_cast<std::size_t>(-1));

/// Encodes both sides; the target is wrapped and truncated to max_tgt_len
/// ids including its markers.
EncodedPair encode_pair(std::string_view source, std::string_view target, const Vocabulary& src_vocab,
                        const Vocabulary& tgt_vocab, const TokenizerOptions& options = {},
                        std::size_t max_src_len = static_cast<std::size_t>(-1),
                        std::size_t max_tgt_len = static_cast<std::size_t>(-1));

struct PaddedBatch {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<TokenId> ids;      // rows x cols, row-major
  std::vector<std::uint8_t> mask;  // 1 on real tokens

  TokenId at(std::size_t r, std::size_t c) const { return ids[r * cols + c]; }
  bool real(std::size_t r, std::size_t c) const { return mask[r * cols + c] != 0; }
  std::size_t length(std::size_t r) const;
  /// Real tokens of row r.
  std::span<const TokenId> row(std::size_t r) const { return {ids.data() + r * cols, length(r)}; }
};

/// Right-pads with kPad. Without `pad_to` the width is the longest sequence.
/// Throws SequenceTooLong when a sequence exceeds an explicit width.
PaddedBatch pad_batch(std::span<const IdSequence> sequences,
                      std::optional<std::size_t> pad_to = std::nullopt);

}  // namespace ffr::tokenizer
