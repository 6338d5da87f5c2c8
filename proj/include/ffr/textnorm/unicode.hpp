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

// UTF-8 codec and the character properties the text pipeline relies on.
// Property data is generated from the Unicode Character Database by
// tools/gen_unicode_tables.py.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ffr::unicode {

std::string_view data_version() noexcept;

/// Decodes UTF-8, rejecting overlong forms, surrogates and values above
/// U+10FFFF. Throws Error(Errc::InvalidUtf8) with the byte offset.
std::u32string decode_utf8(std::string_view text);

/// Non-throwing variant of decode_utf8.
std::optional<std::u32string> try_decode_utf8(std::string_view text);

bool is_valid_utf8(std::string_view text) noexcept;

std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

std::uint8_t combining_class(char32_t cp) noexcept;

/// General category Mn.
bool is_nonspacing_mark(char32_t cp) noexcept;

/// General category L*.
bool is_letter(char32_t cp) noexcept;

/// Unicode White_Space property.
bool is_whitespace(char32_t cp) noexcept;

/// General category Cc.
bool is_control(char32_t cp) noexcept;

/// Simple (1:1) lowercase mapping; code points without one map to themselves.
char32_t to_lower(char32_t cp) noexcept;

std::string to_lower(std::string_view utf8);

/// Splits on maximal runs of White_Space code points. Nothing else is removed.
std::vector<std::string> split_whitespace(std::string_view utf8);

/// Number of tokens split_whitespace would return, without allocating them.
std::size_t count_tokens(std::string_view utf8);

}  // namespace ffr::unicode
