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
#include <cctype>
#include <exception>
#include <iterator>

#include "ffr/textnorm/textnorm.hpp"
#include "ffr/textnorm/unicode.hpp"
#include "textnorm/unicode_tables.hpp"

namespace ffr::textnorm {
namespace {

namespace t = unicode::tables;

const t::Decomposition* find_decomposition(char32_t cp) noexcept {
  if (cp < 0xC0) return nullptr;
  const auto& d = t::kDecompositions;
  auto it = std::lower_bound(std::begin(d), std::end(d), cp,
                             [](const t::Decomposition& e, char32_t c) { return e.cp < c; });
  return (it != std::end(d) && it->cp == cp) ? it : nullptr;
}

char32_t find_composite(char32_t first, char32_t second) noexcept {
  // Hangul LV and LVT.
  if (first >= t::kHangulLBase && first < t::kHangulLBase + t::kHangulLCount &&
      second >= t::kHangulVBase && second < t::kHangulVBase + t::kHangulVCount) {
    return t::kHangulSBase +
           ((first - t::kHangulLBase) * t::kHangulVCount + (second - t::kHangulVBase)) *
               t::kHangulTCount;
  }
  if (first >= t::kHangulSBase && first < t::kHangulSBase + t::kHangulSCount &&
      (first - t::kHangulSBase) % t::kHangulTCount == 0 && second > t::kHangulTBase &&
      second < t::kHangulTBase + t::kHangulTCount) {
    return first + (second - t::kHangulTBase);
  }
  const auto& c = t::kCompositions;
  auto it = std::lower_bound(std::begin(c), std::end(c), std::pair{first, second},
                             [](const t::Composition& e, const std::pair<char32_t, char32_t>& k) {
                               return e.first < k.first ||
                                      (e.first == k.first && e.second < k.second);
                             });
  if (it != std::end(c) && it->first == first && it->second == second) return it->composite;
  return 0;
}

void decompose_into(char32_t cp, std::u32string& out) {
  if (cp >= t::kHangulSBase && cp < t::kHangulSBase + t::kHangulSCount) {
    const char32_t s = cp - t::kHangulSBase;
    out.push_back(t::kHangulLBase + s / t::kHangulNCount);
    out.push_back(t::kHangulVBase + (s % t::kHangulNCount) / t::kHangulTCount);
    if (const char32_t trail = s % t::kHangulTCount; trail != 0) {
      out.push_back(t::kHangulTBase + trail);
    }
    return;
  }
  if (const auto* d = find_decomposition(cp)) {
    decompose_into(d->first, out);
    if (d->second != 0) decompose_into(d->second, out);
    return;
  }
  out.push_back(cp);
}

// Stable sort of every run of non-starters by combining class.
void canonical_order(std::u32string& s) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (unicode::combining_class(s[i]) == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && unicode::combining_class(s[j]) != 0) ++j;
    if (j - i > 1) {
      std::stable_sort(s.begin() + static_cast<std::ptrdiff_t>(i),
                       s.begin() + static_cast<std::ptrdiff_t>(j), [](char32_t a, char32_t b) {
                         return unicode::combining_class(a) < unicode::combining_class(b);
                       });
    }
    i = j;
  }
}

bool is_ascii(std::u32string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](char32_t c) { return c < 0x80; });
}

}  // namespace

std::string_view to_string(Form form) noexcept {
  switch (form) {
    case Form::NFC: return "nfc";
    case Form::NFD: return "nfd";
    case Form::NFDStripMarks: return "strip";
  }
  return "nfc";
}

std::optional<Form> parse_form(std::string_view name) noexcept {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "nfc") return Form::NFC;
  if (lower == "nfd") return Form::NFD;
  if (lower == "strip" || lower == "nfd_strip_marks") return Form::NFDStripMarks;
  return std::nullopt;
}

std::u32string decompose(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size() + text.size() / 4);
  for (char32_t cp : text) decompose_into(cp, out);
  canonical_order(out);
  return out;
}

std::u32string compose(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t starter = std::u32string::npos;
  // Combining class of the last character kept after the current starter;
  // -1 while nothing separates the starter from the next character.
  int last_cc = -1;
  for (char32_t c : s) {
    const int cc = unicode::combining_class(c);
    if (starter != std::u32string::npos && (last_cc == -1 || (last_cc != 0 && last_cc < cc))) {
      if (const char32_t composite = find_composite(out[starter], c); composite != 0) {
        out[starter] = composite;
        continue;
      }
    }
    if (cc == 0) {
      starter = out.size();
      last_cc = -1;
    } else {
      last_cc = cc;
    }
    out.push_back(c);
  }
  return out;
}

std::u32string normalize(std::u32string_view text, Form form) {
  if (is_ascii(text)) return std::u32string(text);
  std::u32string d = decompose(text);
  switch (form) {
    case Form::NFD:
      return d;
    case Form::NFC:
      return compose(d);
    case Form::NFDStripMarks:
      std::erase_if(d, [](char32_t c) { return unicode::is_nonspacing_mark(c); });
      // Removing a mark of class 0 can leave reorderable neighbours adjacent.
      canonical_order(d);
      return d;
  }
  return d;
}

std::string normalize(std::string_view utf8, Form form) {
  const bool ascii = std::all_of(utf8.begin(), utf8.end(),
                                 [](char c) { return static_cast<unsigned char>(c) < 0x80; });
  if (ascii) return std::string(utf8);
  return unicode::encode_utf8(normalize(unicode::decode_utf8(utf8), form));
}

bool is_normalized(std::u32string_view text, Form form) { return normalize(text, form) == text; }

bool is_normalized(std::string_view utf8, Form form) { return normalize(utf8, form) == utf8; }

std::string fold_open_vowels(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (char32_t cp : unicode::decode_utf8(utf8)) {
    switch (cp) {
      case 0x0254: cp = U'o'; break;
      case 0x0186: cp = U'O'; break;
      case 0x025B: cp = U'e'; break;
      case 0x0190: cp = U'E'; break;
      default: break;
    }
    unicode::append_utf8(out, cp);
  }
  return out;
}

std::vector<std::string> normalize_lines(std::span<const std::string> lines, Form form,
                                         Execution exec) {
  std::vector<std::string> out(lines.size());
  const auto n = static_cast<std::ptrdiff_t>(lines.size());
  if (exec == Execution::Parallel) {
    // Exceptions must not escape an OpenMP region; remember the first one.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = normalize(lines[static_cast<std::size_t>(i)], form);
      } catch (...) {
#pragma omp critical(ffr_normalize_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = normalize(lines[static_cast<std::size_t>(i)], form);
    }
  }
  return out;
}

corpus::Corpus normalize_corpus(const corpus::Corpus& c, Form form, Execution exec) {
  const auto sources = normalize_lines(c.sentences(corpus::Side::Source), form, exec);
  const auto targets = normalize_lines(c.sentences(corpus::Side::Target), form, exec);
  corpus::Corpus out = c;
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    out.pairs[i].source = sources[i];
    out.pairs[i].target = targets[i];
  }
  return out;
}

}  // namespace ffr::textnorm
