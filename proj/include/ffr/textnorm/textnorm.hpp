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

// Diacritic-preserving text preprocessing.
//
// Tonal languages such as Fon distinguish words only by their tone marks
// (tó "ears", tò "sea", tô "country"), so the preprocessing must keep marks
// attached to their base letters. NFC does that; stripping marks after NFD
// collapses such words onto one skeleton and is provided for comparison.

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffr/common/execution.hpp"
#include "ffr/corpus/corpus.hpp"

namespace ffr::textnorm {

enum class Form {
  NFC,
  NFD,
  /// NFD followed by removal of every nonspacing mark (category Mn).
  NFDStripMarks,
};

std::string_view to_string(Form form) noexcept;

/// Accepts "nfc", "nfd" and "strip" (case-insensitive).
std::optional<Form> parse_form(std::string_view name) noexcept;

std::u32string normalize(std::u32string_view text, Form form);

/// Throws Error(Errc::InvalidUtf8) on malformed input.
std::string normalize(std::string_view utf8, Form form);

bool is_normalized(std::u32string_view text, Form form);
bool is_normalized(std::string_view utf8, Form form);

/// Full canonical decomposition with canonical ordering.
std::u32string decompose(std::u32string_view text);

/// Canonical composition of an already decomposed, canonically ordered string.
std::u32string compose(std::u32string_view decomposed);

/// Maps open vowels onto their closest plain Latin letter: ɔ→o, ɛ→e and the
/// capital forms. These letters carry no combining mark, so stripping alone
/// never merges them with o and e.
std::string fold_open_vowels(std::string_view utf8);

/// Normalizes many lines. The parallel path splits lines across OpenMP
/// threads; output order matches input order either way.
std::vector<std::string> normalize_lines(std::span<const std::string> lines, Form form,
                                         Execution exec = Execution::Serial);

corpus::Corpus normalize_corpus(const corpus::Corpus& c, Form form,
                                Execution exec = Execution::Serial);

// ---------------------------------------------------------------------------
// Diacritic families

struct DiacriticFamily {
  /// Token with all marks stripped (and open vowels folded when enabled).
  std::string skeleton;
  /// Distinct NFC surface forms, sorted by code point.
  std::vector<std::string> variants;
  std::map<std::string, std::size_t> counts;

  std::size_t total() const;
};

struct FamilyOptions {
  bool lowercase = true;
  bool fold_open_vowels = false;
};

/// Groups the tokens of one corpus side by skeleton and returns the groups
/// that have at least two distinct variants, most frequent first (ties by
/// skeleton code point order). Throws EmptyCorpus.
std::vector<DiacriticFamily> find_diacritic_families(const corpus::Corpus& c, corpus::Side side,
                                                     const FamilyOptions& options = {});

/// One JSON object per family, newline separated.
std::string families_to_jsonl(std::span<const DiacriticFamily> families);

}  // namespace ffr::textnorm
