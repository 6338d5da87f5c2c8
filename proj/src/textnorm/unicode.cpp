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

#include "ffr/textnorm/unicode.hpp"

#include <algorithm>
#include <iterator>

#include "ffr/common/error.hpp"
#include "textnorm/unicode_tables.hpp"

namespace ffr::unicode {
namespace {

template <typename Range>
bool in_ranges(const Range& ranges, char32_t cp) noexcept {
  auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                             [](char32_t c, const auto& r) { return c < r.first; });
  if (it == std::begin(ranges)) return false;
  --it;
  return cp <= it->last;
}

// Returns the number of bytes consumed, or 0 on malformed input.
std::size_t decode_one(std::string_view s, std::size_t i, char32_t& out) noexcept {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    out = b0;
    return 1;
  }
  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  out = cp;
  return len;
}

}  // namespace

std::string_view data_version() noexcept { return tables::kUnicodeVersion; }

std::optional<std::u32string> try_decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    char32_t cp;
    const std::size_t n = decode_one(text, i, cp);
    if (n == 0) return std::nullopt;
    out.push_back(cp);
    i += n;
  }
  return out;
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    char32_t cp;
    const std::size_t n = decode_one(text, i, cp);
    if (n == 0) {
      throw Error(Errc::InvalidUtf8, "malformed UTF-8 at byte offset " + std::to_string(i));
    }
    out.push_back(cp);
    i += n;
  }
  return out;
}

bool is_valid_utf8(std::string_view text) noexcept {
  for (std::size_t i = 0; i < text.size();) {
    char32_t cp;
    const std::size_t n = decode_one(text, i, cp);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

std::uint8_t combining_class(char32_t cp) noexcept {
  if (cp < 0x300) return 0;
  const auto& ranges = tables::kCccRanges;
  auto it = std::upper_bound(std::begin(ranges), std::end(ranges), cp,
                             [](char32_t c, const tables::CccRange& r) { return c < r.first; });
  if (it == std::begin(ranges)) return 0;
  --it;
  return cp <= it->last ? it->ccc : 0;
}

bool is_nonspacing_mark(char32_t cp) noexcept {
  return cp >= 0x300 && in_ranges(tables::kNonspacingMarkRanges, cp);
}

bool is_letter(char32_t cp) noexcept {
  if (cp < 0x80) return (cp | 0x20) >= 'a' && (cp | 0x20) <= 'z';
  return in_ranges(tables::kLetterRanges, cp);
}

bool is_whitespace(char32_t cp) noexcept {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_control(char32_t cp) noexcept { return cp < 0x20 || (cp >= 0x7F && cp <= 0x9F); }

char32_t to_lower(char32_t cp) noexcept {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  const auto& map = tables::kLowercase;
  auto it = std::lower_bound(std::begin(map), std::end(map), cp,
                             [](const tables::CaseMapping& m, char32_t c) { return m.from < c; });
  return (it != std::end(map) && it->from == cp) ? it->to : cp;
}

std::string to_lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (char32_t cp : decode_utf8(utf8)) append_utf8(out, to_lower(cp));
  return out;
}

std::vector<std::string> split_whitespace(std::string_view utf8) {
  std::vector<std::string> tokens;
  std::size_t start = std::string_view::npos;
  for (std::size_t i = 0; i < utf8.size();) {
    char32_t cp;
    std::size_t n = decode_one(utf8, i, cp);
    if (n == 0) throw Error(Errc::InvalidUtf8, "malformed UTF-8 at byte offset " + std::to_string(i));
    if (is_whitespace(cp)) {
      if (start != std::string_view::npos) {
        tokens.emplace_back(utf8.substr(start, i - start));
        start = std::string_view::npos;
      }
    } else if (start == std::string_view::npos) {
      start = i;
    }
    i += n;
  }
  if (start != std::string_view::npos) tokens.emplace_back(utf8.substr(start));
  return tokens;
}

std::size_t count_tokens(std::string_view utf8) {
  std::size_t count = 0;
  bool in_token = false;
  for (std::size_t i = 0; i < utf8.size();) {
    char32_t cp;
    std::size_t n = decode_one(utf8, i, cp);
    if (n == 0) throw Error(Errc::InvalidUtf8, "malformed UTF-8 at byte offset " + std::to_string(i));
    const bool ws = is_whitespace(cp);
    if (!ws && !in_token) ++count;
    in_token = !ws;
    i += n;
  }
  return count;
}

}  // namespace ffr::unicode
