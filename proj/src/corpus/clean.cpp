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
#include <limits>
#include <set>

#include "ffr/corpus/corpus.hpp"
#include "ffr/textnorm/unicode.hpp"

namespace ffr::corpus {
namespace {

constexpr CleanRule kCatalogue[] = {
    CleanRule::DropEmpty,         CleanRule::DropExactDuplicates, CleanRule::DropLengthRatio,
    CleanRule::DropNoLetters,     CleanRule::StripControlChars,   CleanRule::CollapseWhitespace,
};

bool is_transform(CleanRule rule) {
  return rule == CleanRule::StripControlChars || rule == CleanRule::CollapseWhitespace;
}

bool has_rule(const CleanRules& rules, CleanRule rule) {
  return std::find(rules.rules.begin(), rules.rules.end(), rule) != rules.rules.end();
}

std::string strip_control(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : unicode::decode_utf8(text)) {
    if (!unicode::is_control(cp)) unicode::append_utf8(out, cp);
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  for (const auto& token : unicode::split_whitespace(text)) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

bool has_letter(std::string_view text) {
  const auto cps = unicode::decode_utf8(text);
  return std::any_of(cps.begin(), cps.end(), [](char32_t c) { return unicode::is_letter(c); });
}

double length_ratio(const SentencePair& p) {
  const auto a = static_cast<double>(unicode::count_tokens(p.source));
  const auto b = static_cast<double>(unicode::count_tokens(p.target));
  if (a == 0.0 || b == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(a, b) / std::min(a, b);
}

}  // namespace

std::string_view to_string(CleanRule rule) noexcept {
  switch (rule) {
    case CleanRule::DropEmpty: return "drop_empty";
    case CleanRule::DropExactDuplicates: return "drop_exact_duplicates";
    case CleanRule::DropLengthRatio: return "drop_length_ratio";
    case CleanRule::DropNoLetters: return "drop_no_letters";
    case CleanRule::StripControlChars: return "strip_control_chars";
    case CleanRule::CollapseWhitespace: return "collapse_whitespace";
  }
  return "";
}

std::optional<CleanRule> parse_clean_rule(std::string_view name) noexcept {
  for (CleanRule r : kCatalogue) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

CleanRules CleanRules::all() {
  return CleanRules{std::vector<CleanRule>(std::begin(kCatalogue), std::end(kCatalogue)), 3.0};
}

std::pair<Corpus, CleanReport> clean(const Corpus& corpus, const CleanRules& rules) {
  CleanReport report;
  report.input_count = corpus.size();
  for (CleanRule r : rules.rules) {
    if (!is_transform(r)) report.dropped_by_rule[std::string(to_string(r))] = 0;
  }

  const bool strip = has_rule(rules, CleanRule::StripControlChars);
  const bool collapse = has_rule(rules, CleanRule::CollapseWhitespace);

  Corpus out;
  out.source_lang = corpus.source_lang;
  out.target_lang = corpus.target_lang;
  std::set<std::pair<std::string, std::string>> seen;

  for (const auto& original : corpus.pairs) {
    SentencePair p = original;
    if (strip) {
      p.source = strip_control(p.source);
      p.target = strip_control(p.target);
    }
    if (collapse) {
      p.source = collapse_whitespace(p.source);
      p.target = collapse_whitespace(p.target);
    }

    std::optional<CleanRule> rejected;
    for (CleanRule r : rules.rules) {
      bool drop = false;
      switch (r) {
        case CleanRule::DropEmpty:
          drop = unicode::count_tokens(p.source) == 0 || unicode::count_tokens(p.target) == 0;
          break;
        case CleanRule::DropExactDuplicates:
          // Keyed on the collapsed form even when collapse_whitespace is off.
          drop = seen.contains({collapse_whitespace(p.source), collapse_whitespace(p.target)});
          break;
        case CleanRule::DropLengthRatio:
          drop = length_ratio(p) > rules.max_length_ratio;
          break;
        case CleanRule::DropNoLetters:
          drop = !has_letter(p.source) || !has_letter(p.target);
          break;
        case CleanRule::StripControlChars:
        case CleanRule::CollapseWhitespace:
          break;
      }
      if (drop) {
        rejected = r;
        break;
      }
    }

    if (rejected) {
      ++report.dropped_by_rule[std::string(to_string(*rejected))];
      continue;
    }
    if (has_rule(rules, CleanRule::DropExactDuplicates)) {
      seen.emplace(collapse_whitespace(p.source), collapse_whitespace(p.target));
    }
    p.id = static_cast<std::int64_t>(out.pairs.size());
    out.pairs.push_back(std::move(p));
  }

  report.output_count = out.size();
  return {std::move(out), std::move(report)};
}

}  // namespace ffr::corpus
