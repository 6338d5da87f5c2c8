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
#include "ffr/textnorm/unicode.hpp"

namespace ffr::metrics {

NgramCounts ngram_counts(std::span<const std::string> tokens, std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "n-gram order must be >= 1");
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t total_count(const NgramCounts& counts) {
  std::size_t total = 0;
  for (const auto& [gram, c] : counts) total += c;
  return total;
}

std::size_t clipped_matches(const NgramCounts& hyp, const NgramCounts& ref) {
  std::size_t matches = 0;
  for (const auto& [gram, c] : hyp) {
    if (auto it = ref.find(gram); it != ref.end()) matches += std::min(c, it->second);
  }
  return matches;
}

Tokens split(std::string_view sentence) { return unicode::split_whitespace(sentence); }

}  // namespace ffr::metrics
