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

// Automatic translation metrics (BLEU, GLEU) and the arithmetic of the
// Context-Meaning-Similarity human score.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffr/common/execution.hpp"

namespace ffr::metrics {

using Tokens = std::vector<std::string>;
using Ngram = std::vector<std::string>;
using NgramCounts = std::map<Ngram, std::size_t>;

/// Multiset of the n-grams of `tokens`; has max(0, len - n + 1) elements.
NgramCounts ngram_counts(std::span<const std::string> tokens, std::size_t n);

/// Sum of the multiplicities in `counts`.
std::size_t total_count(const NgramCounts& counts);

/// Clipped matches: sum over hyp n-grams of min(count_hyp, count_ref).
std::size_t clipped_matches(const NgramCounts& hyp, const NgramCounts& ref);

/// Whitespace tokenization without case folding, for metric inputs.
Tokens split(std::string_view sentence);

// ---------------------------------------------------------------------------
// BLEU

struct BleuReport {
  double score = 0.0;
  std::vector<double> precisions;       // p_1 .. p_max_n
  std::vector<std::size_t> matches;     // clipped matches per order
  std::vector<std::size_t> candidates;  // hypothesis n-grams per order
  double brevity_penalty = 0.0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
};

/// Corpus BLEU with one reference per hypothesis: clipped n-gram counts are
/// pooled over the corpus, BP = min(1, exp(1 - ref_len / hyp_len)), and the
/// score is BP times the geometric mean of p_1..p_max_n (0 if any is 0).
/// Throws LengthMismatch and EmptyHypothesisSet.
BleuReport bleu_corpus(std::span<const Tokens> refs, std::span<const Tokens> hyps,
                       std::size_t max_n = 4);
BleuReport bleu_corpus(std::span<const std::string> refs, std::span<const std::string> hyps,
                       std::size_t max_n = 4);

enum class Smoothing {
  None,
  /// Add one to the matches and candidates of every order n >= 2.
  AddOne2Plus,
};

std::optional<Smoothing> parse_smoothing(std::string_view name) noexcept;

BleuReport bleu_sentence_report(std::span<const std::string> ref, std::span<const std::string> hyp,
                                std::size_t max_n = 4, Smoothing smoothing = Smoothing::AddOne2Plus);

double bleu_sentence(std::span<const std::string> ref, std::span<const std::string> hyp,
                     std::size_t max_n = 4, Smoothing smoothing = Smoothing::AddOne2Plus);
double bleu_sentence(std::string_view ref, std::string_view hyp, std::size_t max_n = 4,
                     Smoothing smoothing = Smoothing::AddOne2Plus);

// ---------------------------------------------------------------------------
// GLEU

struct GleuReport {
  double score = 0.0;
  std::size_t match_count = 0;
  std::size_t hyp_ngrams = 0;
  std::size_t ref_ngrams = 0;
};

/// Sentence GLEU: n-grams of every order in [min_n, max_n] are pooled and
/// score = min(matches / hyp_ngrams, matches / ref_ngrams).
GleuReport gleu_sentence(std::span<const std::string> ref, std::span<const std::string> hyp,
                         std::size_t min_n = 1, std::size_t max_n = 4);
GleuReport gleu_sentence(std::string_view ref, std::string_view hyp, std::size_t min_n = 1,
                         std::size_t max_n = 4);

/// Mean of sentence GLEU over a corpus.
double gleu_corpus_mean(std::span<const Tokens> refs, std::span<const Tokens> hyps,
                        std::size_t min_n = 1, std::size_t max_n = 4);

/// Per-sentence scores over a corpus. The parallel path scores sentences on
/// OpenMP threads; results are identical to the serial path.
enum class SentenceMetric { Bleu, Gleu };
std::vector<double> sentence_scores(std::span<const Tokens> refs, std::span<const Tokens> hyps,
                                    SentenceMetric metric, Execution exec = Execution::Serial);

// ---------------------------------------------------------------------------
// Context-Meaning-Similarity

/// Default weight on the reference-free score.
inline constexpr double kDefaultCmsAlpha = 0.7;

struct CmsScorePair {
  double t = 0.0;    // similarity judged without the reference
  double t_r = 0.0;  // similarity judged with the reference
  double alpha = kDefaultCmsAlpha;
  double t_total = 0.0;
};

/// alpha * t + (1 - alpha) * t_r. Throws DomainError if any input is
/// outside [0, 1].
double cms_total(double t, double t_r, double alpha = kDefaultCmsAlpha);

CmsScorePair make_cms_score(double t, double t_r, double alpha = kDefaultCmsAlpha);

/// Mean of the annotators' t_total values for one item. Throws NoScores.
double cms_item(std::span<const CmsScorePair> annotator_scores);
double cms_item(std::span<const double> annotator_totals);

/// Mean of item CMS values. Throws NoScores.
double cms_task(std::span<const double> item_scores);

}  // namespace ffr::metrics
