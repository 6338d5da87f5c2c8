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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace ffr::corpus {

enum class Origin { JW, BL, Other };

std::string_view to_string(Origin origin) noexcept;

enum class Side { Source, Target };

struct SentencePair {
  std::int64_t id = 0;
  std::string source;
  std::string target;
  Origin origin = Origin::Other;

  const std::string& side(Side s) const { return s == Side::Source ? source : target; }

  bool operator==(const SentencePair&) const = default;
};

struct Corpus {
  std::vector<SentencePair> pairs;
  std::string source_lang = "fon";
  std::string target_lang = "fr";

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }

  /// All sentences of one side, in corpus order.
  std::vector<std::string> sentences(Side s) const;

  bool operator==(const Corpus&) const = default;
};

// ---------------------------------------------------------------------------
// I/O

enum class Format { Tsv, PairedTxt };

struct LoadOptions {
  /// Skip the first TSV row.
  bool header = false;
  /// Origin tag stamped on every loaded pair.
  Origin origin = Origin::Other;
};

/// Loads a corpus. For Format::Tsv `path` is the TSV file and `companion` is
/// ignored; for Format::PairedTxt `path` holds source lines and `companion`
/// the target lines. Ids are assigned 0..n-1 in file order.
///
/// Throws Error with MalformedRow, LineCountMismatch, InvalidUtf8 or Io.
Corpus load_parallel(const std::filesystem::path& path, Format format,
                     const std::filesystem::path& companion = {}, const LoadOptions& options = {});

Corpus load_tsv(const std::filesystem::path& path, const LoadOptions& options = {});
Corpus load_paired(const std::filesystem::path& source, const std::filesystem::path& target,
                   const LoadOptions& options = {});

/// Parses TSV text already in memory (same rules as load_tsv).
Corpus parse_tsv(std::string_view text, const LoadOptions& options = {});

/// Writes one row per pair, LF terminated. Throws Error(Errc::Io).
void export_tsv(const Corpus& corpus, const std::filesystem::path& path);
void export_paired(const Corpus& corpus, const std::filesystem::path& source,
                   const std::filesystem::path& target);
void export_parallel(const Corpus& corpus, const std::filesystem::path& path, Format format,
                     const std::filesystem::path& companion = {});

std::string to_tsv(const Corpus& corpus);

// ---------------------------------------------------------------------------
// Cleaning

enum class CleanRule {
  DropEmpty,
  DropExactDuplicates,
  DropLengthRatio,
  DropNoLetters,
  StripControlChars,
  CollapseWhitespace,
};

std::string_view to_string(CleanRule rule) noexcept;
std::optional<CleanRule> parse_clean_rule(std::string_view name) noexcept;

struct CleanRules {
  std::vector<CleanRule> rules;
  double max_length_ratio = 3.0;

  /// Every rule in catalogue order.
  static CleanRules all();
};

struct CleanReport {
  std::size_t input_count = 0;
  std::size_t output_count = 0;
  /// One entry per dropping rule that was requested, including zero counts.
  std::map<std::string, std::size_t> dropped_by_rule;
};

/// Applies the requested rules. Text transforms (control stripping, whitespace
/// collapse) run before any drop rule; drop rules run in the requested order
/// and a pair is charged to the first rule that rejects it. Survivors keep
/// their relative order and are renumbered 0..m-1. Idempotent.
std::pair<Corpus, CleanReport> clean(const Corpus& corpus, const CleanRules& rules);

// ---------------------------------------------------------------------------
// Length statistics

/// Inclusive upper bounds of every bucket but the last. The default gives
/// [1-5], [6-10], [11-30], [31-max].
struct BucketSpec {
  std::vector<std::size_t> upper_bounds{5, 10, 30};

  std::size_t bucket_count() const noexcept { return upper_bounds.size() + 1; }
  std::vector<std::string> labels() const;
};

struct SideLengthStats {
  std::vector<std::size_t> counts;
  std::size_t max_len = 0;

  bool operator==(const SideLengthStats&) const = default;
};

struct LengthBucketReport {
  std::vector<std::string> labels;
  SideLengthStats source;
  SideLengthStats target;
  std::size_t total = 0;
};

/// Buckets every sentence by whitespace-token count. Sentences with zero
/// tokens fall in the first bucket so each side still sums to the total.
/// Throws EmptyCorpus, or InvalidArgument for non-increasing bounds.
LengthBucketReport length_stats(const Corpus& corpus, const BucketSpec& spec = {});

// ---------------------------------------------------------------------------
// Splitting

struct SplitCounts {
  std::size_t train = 0, valid = 0, test = 0;
};

struct SplitFractions {
  double train = 0.0, valid = 0.0, test = 0.0;
};

struct SplitSpec {
  std::variant<SplitCounts, SplitFractions> sizes;
  std::uint64_t seed = 0;
  /// Interleave origins so each part keeps roughly the corpus origin mix.
  bool stratify_by_origin = false;
};

struct SplitResult {
  Corpus train, valid, test;
};

/// Resolves a spec to exact counts for a corpus of size n. Fractions are
/// rounded for train and valid; test takes the remainder.
/// Throws SpecMismatch when counts do not sum to n or fractions to 1 ± 1e-9.
SplitCounts resolve_split(const SplitSpec& spec, std::size_t n);

/// Shuffles with the spec's seed, then partitions. Pair ids are preserved.
SplitResult split(const Corpus& corpus, const SplitSpec& spec);

}  // namespace ffr::corpus
