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
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"
#include "ffr/corpus/corpus.hpp"

namespace ffr::corpus {

SplitCounts resolve_split(const SplitSpec& spec, std::size_t n) {
  if (const auto* counts = std::get_if<SplitCounts>(&spec.sizes)) {
    if (counts->train + counts->valid + counts->test != n) {
      throw Error(Errc::SpecMismatch,
                  "split counts " + std::to_string(counts->train) + "+" +
                      std::to_string(counts->valid) + "+" + std::to_string(counts->test) +
                      " do not sum to corpus size " + std::to_string(n));
    }
    return *counts;
  }
  const auto& f = std::get<SplitFractions>(spec.sizes);
  if (f.train < 0 || f.valid < 0 || f.test < 0 ||
      std::abs(f.train + f.valid + f.test - 1.0) > 1e-9) {
    throw Error(Errc::SpecMismatch, "split fractions must be non-negative and sum to 1");
  }
  const auto total = static_cast<double>(n);
  SplitCounts c;
  c.train = static_cast<std::size_t>(std::llround(f.train * total));
  c.valid = static_cast<std::size_t>(std::llround(f.valid * total));
  if (c.train > n) c.train = n;
  if (c.train + c.valid > n) c.valid = n - c.train;
  c.test = n - c.train - c.valid;
  return c;
}

SplitResult split(const Corpus& corpus, const SplitSpec& spec) {
  const SplitCounts counts = resolve_split(spec, corpus.size());

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(spec.seed);

  SplitResult result;
  for (Corpus* part : {&result.train, &result.valid, &result.test}) {
    part->source_lang = corpus.source_lang;
    part->target_lang = corpus.target_lang;
  }

  if (!spec.stratify_by_origin) {
    rng.shuffle(std::span(order));
    for (std::size_t k = 0; k < order.size(); ++k) {
      Corpus& part = k < counts.train                  ? result.train
                     : k < counts.train + counts.valid ? result.valid
                                                       : result.test;
      part.pairs.push_back(corpus.pairs[order[k]]);
    }
    return result;
  }

  // Group by origin (shuffled within each group), then deal the grouped list
  // out so that every prefix is split as close to the target ratio as
  // possible. Each origin therefore lands in every part roughly in proportion.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus.pairs[a].origin < corpus.pairs[b].origin;
  });
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    while (end < order.size() && corpus.pairs[order[end]].origin == corpus.pairs[order[start]].origin) {
      ++end;
    }
    rng.shuffle(std::span(order).subspan(start, end - start));
    start = end;
  }

  const std::array<std::size_t, 3> quota{counts.train, counts.valid, counts.test};
  std::array<Corpus*, 3> parts{&result.train, &result.valid, &result.test};
  std::array<std::size_t, 3> assigned{0, 0, 0};
  const auto n = static_cast<double>(corpus.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t best = 3;
    double best_deficit = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < 3; ++s) {
      if (assigned[s] >= quota[s]) continue;
      const double deficit =
          static_cast<double>(k + 1) * static_cast<double>(quota[s]) / n - static_cast<double>(assigned[s]);
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = s;
      }
    }
    ++assigned[best];
    parts[best]->pairs.push_back(corpus.pairs[order[k]]);
  }
  return result;
}

}  // namespace ffr::corpus
