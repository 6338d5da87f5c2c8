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

#pragma once

#include <cstdint>

namespace ffr::unicode::tables {

struct CccRange {
  char32_t first;
  char32_t last;
  std::uint8_t ccc;
};

/// One level of canonical decomposition; `second` is 0 for singletons.
struct Decomposition {
  char32_t cp;
  char32_t first;
  char32_t second;
};

/// Primary composites only (composition exclusions already removed).
struct Composition {
  char32_t first;
  char32_t second;
  char32_t composite;
};

struct CodeRange {
  char32_t first;
  char32_t last;
};

struct CaseMapping {
  char32_t from;
  char32_t to;
};

#include "unicode_tables.inc"

// Hangul syllables are composed algorithmically rather than tabulated.
inline constexpr char32_t kHangulSBase = 0xAC00;
inline constexpr char32_t kHangulLBase = 0x1100;
inline constexpr char32_t kHangulVBase = 0x1161;
inline constexpr char32_t kHangulTBase = 0x11A7;
inline constexpr int kHangulLCount = 19;
inline constexpr int kHangulVCount = 21;
inline constexpr int kHangulTCount = 28;
inline constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
inline constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

}  // namespace ffr::unicode::tables
