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
#include "ffr/metrics/metrics.hpp"

namespace ffr::metrics {

GleuReport gleu_sentence(std::span<const std::string> ref, std::span<const std::string> hyp,
                         std::size_t min_n, std::size_t max_n) {
  if (min_n == 0 || max_n < min_n) {
    throw Error(Errc::InvalidArgument, "GLEU needs 1 <= min_n <= max_n");
  }
  GleuReport r;
  for (std::size_t n = min_n; n <= max_n; ++n) {
    const NgramCounts h = ngram_counts(hyp, n);
    const NgramCounts g = ngram_counts(ref, n);
    r.match_count += clipped_matches(h, g);
    r.hyp_ngrams += total_count(h);
    r.ref_ngrams += total_count(g);
  }
  if (r.hyp_ngrams == 0 || r.ref_ngrams == 0) return r;
  const double m = static_cast<double>(r.match_count);
  r.score = std::min(m / static_cast<double>(r.hyp_ngrams), m / static_cast<double>(r.ref_ngrams));
  return r;
}

GleuReport gleu_sentence(std::string_view ref, std::string_view hyp, std::size_t min_n,
                         std::size_t max_n) {
  const Tokens r = split(ref);
  const Tokens h = split(hyp);
  return gleu_sentence(r, h, min_n, max_n);
}

double gleu_corpus_mean(std::span<const Tokens> refs, std::span<const Tokens> hyps,
                        std::size_t min_n, std::size_t max_n) {
  if (refs.size() != hyps.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(refs.size()) + " references but " +
                                          std::to_string(hyps.size()) + " hypotheses");
  }
  if (hyps.empty()) throw Error(Errc::EmptyHypothesisSet, "GLEU needs at least one hypothesis");
  double total = 0.0;
  for (std::size_t i = 0; i < refs.size(); ++i) total += gleu_sentence(refs[i], hyps[i], min_n, max_n).score;
  return total / static_cast<double>(refs.size());
}

}  // namespace ffr::metrics
