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
#include <numeric>

#include <json.hpp>

#include "ffr/common/error.hpp"
#include "ffr/textnorm/textnorm.hpp"
#include "ffr/textnorm/unicode.hpp"

namespace ffr::textnorm {

std::size_t DiacriticFamily::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0},
                         [](std::size_t acc, const auto& kv) { return acc + kv.second; });
}

std::vector<DiacriticFamily> find_diacritic_families(const corpus::Corpus& c, corpus::Side side,
                                                     const FamilyOptions& options) {
  if (c.empty()) throw Error(Errc::EmptyCorpus, "cannot search an empty corpus for families");

  std::map<std::string, std::map<std::string, std::size_t>> groups;
  for (const auto& pair : c.pairs) {
    for (auto& token : unicode::split_whitespace(pair.side(side))) {
      std::string surface = options.lowercase ? unicode::to_lower(token) : std::move(token);
      surface = normalize(surface, Form::NFC);
      std::string skeleton = normalize(surface, Form::NFDStripMarks);
      if (options.fold_open_vowels) skeleton = fold_open_vowels(skeleton);
      ++groups[skeleton][surface];
    }
  }

  std::vector<DiacriticFamily> families;
  for (auto& [skeleton, counts] : groups) {
    if (counts.size() < 2) continue;
    DiacriticFamily f;
    f.skeleton = skeleton;
    for (const auto& [variant, n] : counts) f.variants.push_back(variant);
    f.counts = std::move(counts);
    families.push_back(std::move(f));
  }
  // UTF-8 byte order coincides with code point order, so std::string's
  // comparison gives the skeleton tie-break directly.
  std::stable_sort(families.begin(), families.end(),
                   [](const DiacriticFamily& a, const DiacriticFamily& b) {
                     const auto ta = a.total(), tb = b.total();
                     if (ta != tb) return ta > tb;
                     return a.skeleton < b.skeleton;
                   });
  return families;
}

std::string families_to_jsonl(std::span<const DiacriticFamily> families) {
  std::string out;
  for (const auto& f : families) {
    nlohmann::ordered_json j;
    j["skeleton"] = f.skeleton;
    j["variants"] = f.variants;
    j["counts"] = f.counts;
    j["total"] = f.total();
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ffr::textnorm
