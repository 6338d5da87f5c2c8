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
#include "ffr/corpus/corpus.hpp"
#include "ffr/textnorm/unicode.hpp"

namespace ffr::corpus {

std::vector<std::string> BucketSpec::labels() const {
  std::vector<std::string> out;
  std::size_t lo = 1;
  for (std::size_t hi : upper_bounds) {
    out.push_back(std::to_string(lo) + "-" + std::to_string(hi));
    lo = hi + 1;
  }
  out.push_back(std::to_string(lo) + "-max");
  return out;
}

LengthBucketReport length_stats(const Corpus& corpus, const BucketSpec& spec) {
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "length statistics need at least one pair");
  const auto& bounds = spec.upper_bounds;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i] == 0 || (i > 0 && bounds[i] <= bounds[i - 1])) {
      throw Error(Errc::InvalidArgument, "bucket bounds must be positive and strictly increasing");
    }
  }

  LengthBucketReport report;
  report.labels = spec.labels();
  report.total = corpus.size();
  report.source.counts.assign(spec.bucket_count(), 0);
  report.target.counts.assign(spec.bucket_count(), 0);

  auto tally = [&](SideLengthStats& side, std::string_view sentence) {
    const std::size_t len = unicode::count_tokens(sentence);
    const auto bucket = static_cast<std::size_t>(
        std::lower_bound(bounds.begin(), bounds.end(), len) - bounds.begin());
    ++side.counts[bucket];
    side.max_len = std::max(side.max_len, len);
  };
  for (const auto& p : corpus.pairs) {
    tally(report.source, p.source);
    tally(report.target, p.target);
  }
  return report;
}

}  // namespace ffr::corpus
