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

// Synthetic corpora for training-level tests.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffr/common/rng.hpp"
#include "ffr/corpus/corpus.hpp"
#include "ffr/textnorm/textnorm.hpp"

namespace ffr::synthetic {

/// Copy task: target = source, 3-6 tokens over a small alphabet of words.
inline corpus::Corpus copy_task(std::size_t pairs, std::uint64_t seed) {
  static const std::vector<std::string> words = {"ba", "de", "fi", "go", "hu", "ka",
                                                 "le", "mi", "no", "pu", "ri", "su"};
  Rng rng(seed);
  corpus::Corpus c;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t len = 3 + rng.below(4);
    std::string s;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) s += ' ';
      s += words[rng.below(words.size())];
    }
    c.pairs.push_back({static_cast<std::int64_t>(i), s, s, corpus::Origin::Other});
  }
  return c;
}

/// Word-by-word "translation" in which a share of the source tokens are
/// tone-marked homographs: tó, tò and tô share the skeleton "to" but map to
/// different target words. Homographs are written decomposed half of the
/// time, so only canonical composition makes their spellings agree.
struct DiacriticCorpusOptions {
  std::size_t pairs = 500;
  double homograph_share = 0.3;
  double decomposed_share = 0.5;
  std::uint64_t seed = 0;
};

struct DiacriticCorpus {
  corpus::Corpus corpus;
  std::size_t source_tokens = 0;
  std::size_t homograph_tokens = 0;
};

inline DiacriticCorpus diacritic_corpus(const DiacriticCorpusOptions& o) {
  // Skeleton syllables; each gets acute, grave and circumflex on its vowel.
  static const std::vector<std::string> skeletons = {"to", "se", "ma", "hu", "wi", "ko"};
  static const std::vector<std::string> marks = {"\u0301", "\u0300", "\u0302"};
  static const std::vector<std::string> plain = {"ab",  "bel", "cun", "dra", "eft", "fol", "gim", "hap",
                                                 "ilk", "jor", "kes", "lum", "mon", "nap", "ovi", "pra",
                                                 "qui", "ros", "sul", "tam"};
  struct Word {
    std::string composed, decomposed, target;
  };
  std::vector<Word> homographs;
  for (std::size_t s = 0; s < skeletons.size(); ++s) {
    for (std::size_t m = 0; m < marks.size(); ++m) {
      const std::string nfd = skeletons[s] + marks[m];
      homographs.push_back({textnorm::normalize(nfd, textnorm::Form::NFC), nfd,
                            "h" + std::to_string(s) + "x" + std::to_string(m)});
    }
  }

  Rng rng(o.seed);
  DiacriticCorpus out;
  for (std::size_t i = 0; i < o.pairs; ++i) {
    const std::size_t len = 4 + rng.below(4);
    std::string src, tgt;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) {
        src += ' ';
        tgt += ' ';
      }
      ++out.source_tokens;
      if (rng.bernoulli(o.homograph_share)) {
        const Word& w = homographs[rng.below(homographs.size())];
        src += rng.bernoulli(o.decomposed_share) ? w.decomposed : w.composed;
        tgt += w.target;
        ++out.homograph_tokens;
      } else {
        const std::size_t p = rng.below(plain.size());
        src += plain[p];
        tgt += "p" + std::to_string(p);
      }
    }
    out.corpus.pairs.push_back({static_cast<std::int64_t>(i), src, tgt, corpus::Origin::Other});
  }
  return out;
}

}  // namespace ffr::synthetic
