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

#include <cmath>
#include <exception>

#include "ffr/common/error.hpp"
#include "ffr/metrics/metrics.hpp"

namespace ffr::metrics {
namespace {

struct BleuStats {
  std::vector<std::size_t> matches;
  std::vector<std::size_t> candidates;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;

  explicit BleuStats(std::size_t max_n) : matches(max_n, 0), candidates(max_n, 0) {}

  void add(std::span<const std::string> ref, std::span<const std::string> hyp) {
    hyp_len += hyp.size();
    ref_len += ref.size();
    for (std::size_t n = 1; n <= matches.size(); ++n) {
      const NgramCounts h = ngram_counts(hyp, n);
      matches[n - 1] += clipped_matches(h, ngram_counts(ref, n));
      candidates[n - 1] += total_count(h);
    }
  }
};

BleuReport finish(const BleuStats& s, Smoothing smoothing) {
  BleuReport r;
  r.matches = s.matches;
  r.candidates = s.candidates;
  r.hyp_len = s.hyp_len;
  r.ref_len = s.ref_len;
  const std::size_t max_n = s.matches.size();
  r.precisions.resize(max_n);
  bool any_zero = false;
  double log_sum = 0.0;
  for (std::size_t i = 0; i < max_n; ++i) {
    double m = static_cast<double>(s.matches[i]);
    double c = static_cast<double>(s.candidates[i]);
    if (smoothing == Smoothing::AddOne2Plus && i >= 1) {
      m += 1.0;
      c += 1.0;
    }
    r.precisions[i] = c > 0.0 ? m / c : 0.0;
    if (r.precisions[i] == 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(r.precisions[i]);
    }
  }
  if (s.hyp_len == 0) {
    r.brevity_penalty = 0.0;
  } else if (s.hyp_len >= s.ref_len) {
    r.brevity_penalty = 1.0;
  } else {
    r.brevity_penalty =
        std::exp(1.0 - static_cast<double>(s.ref_len) / static_cast<double>(s.hyp_len));
  }
  r.score = any_zero ? 0.0 : r.brevity_penalty * std::exp(log_sum / static_cast<double>(max_n));
  return r;
}

void check_order(std::size_t max_n) {
  if (max_n == 0) throw Error(Errc::InvalidArgument, "BLEU order must be >= 1");
}

}  // namespace

std::optional<Smoothing> parse_smoothing(std::string_view name) noexcept {
  if (name == "none" || name == "NONE") return Smoothing::None;
  if (name == "add-one-2plus" || name == "ADD_ONE_2PLUS" || name == "add_one_2plus") {
    return Smoothing::AddOne2Plus;
  }
  return std::nullopt;
}

BleuReport bleu_corpus(std::span<const Tokens> refs, std::span<const Tokens> hyps, std::size_t max_n) {
  check_order(max_n);
  if (refs.size() != hyps.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(refs.size()) + " references but " +
                                          std::to_string(hyps.size()) + " hypotheses");
  }
  if (hyps.empty()) throw Error(Errc::EmptyHypothesisSet, "BLEU needs at least one hypothesis");
  BleuStats stats(max_n);
  for (std::size_t i = 0; i < refs.size(); ++i) stats.add(refs[i], hyps[i]);
  return finish(stats, Smoothing::None);
}

BleuReport bleu_corpus(std::span<const std::string> refs, std::span<const std::string> hyps,
                       std::size_t max_n) {
  std::vector<Tokens> r, h;
  r.reserve(refs.size());
  h.reserve(hyps.size());
  for (const auto& s : refs) r.push_back(split(s));
  for (const auto& s : hyps) h.push_back(split(s));
  return bleu_corpus(std::span<const Tokens>(r), std::span<const Tokens>(h), max_n);
}

BleuReport bleu_sentence_report(std::span<const std::string> ref, std::span<const std::string> hyp,
                                std::size_t max_n, Smoothing smoothing) {
  check_order(max_n);
  BleuStats stats(max_n);
  stats.add(ref, hyp);
  return finish(stats, smoothing);
}

double bleu_sentence(std::span<const std::string> ref, std::span<const std::string> hyp,
                     std::size_t max_n, Smoothing smoothing) {
  return bleu_sentence_report(ref, hyp, max_n, smoothing).score;
}

double bleu_sentence(std::string_view ref, std::string_view hyp, std::size_t max_n,
                     Smoothing smoothing) {
  const Tokens r = split(ref);
  const Tokens h = split(hyp);
  return bleu_sentence(r, h, max_n, smoothing);
}

std::vector<double> sentence_scores(std::span<const Tokens> refs, std::span<const Tokens> hyps,
                                    SentenceMetric metric, Execution exec) {
  if (refs.size() != hyps.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(refs.size()) + " references but " +
                                          std::to_string(hyps.size()) + " hypotheses");
  }
  std::vector<double> out(refs.size());
  auto score = [&](std::size_t i) {
    return metric == SentenceMetric::Bleu ? bleu_sentence(refs[i], hyps[i])
                                          : gleu_sentence(refs[i], hyps[i]).score;
  };
  const auto n = static_cast<std::ptrdiff_t>(refs.size());
  if (exec == Execution::Parallel) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = score(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(ffr_metric_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = score(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace ffr::metrics
