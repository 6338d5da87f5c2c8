#!/usr/bin/env python3
# Copyright 2026 The FFR Toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates src/textnorm/unicode_tables.inc from Python's unicodedata.

Usage: python3 tools/gen_unicode_tables.py > src/textnorm/unicode_tables.inc
"""

import sys
import unicodedata as ud

MAX_CP = 0x110000
HANGUL_FIRST, HANGUL_LAST = 0xAC00, 0xD7A3


def ranges(pred):
    out = []
    start = None
    for cp in range(MAX_CP + 1):
        hit = cp < MAX_CP and pred(cp)
        if hit and start is None:
            start = cp
        elif not hit and start is not None:
            out.append((start, cp - 1))
            start = None
    return out


def valued_ranges(fn):
    out = []
    cur = None
    for cp in range(MAX_CP + 1):
        v = fn(cp) if cp < MAX_CP else 0
        if cur and v == cur[2] and cp == cur[1] + 1:
            cur[1] = cp
            continue
        if cur:
            out.append(tuple(cur))
            cur = None
        if v:
            cur = [cp, cp, v]
    return out


def is_surrogate(cp):
    return 0xD800 <= cp <= 0xDFFF


def main():
    w = sys.stdout.write
    w("// Generated by tools/gen_unicode_tables.py from Unicode %s. Do not edit.\n\n" % ud.unidata_version)
    w('inline constexpr char kUnicodeVersion[] = "%s";\n\n' % ud.unidata_version)

    ccc = valued_ranges(lambda cp: 0 if is_surrogate(cp) else ud.combining(chr(cp)))
    w("inline constexpr CccRange kCccRanges[] = {\n")
    for a, b, v in ccc:
        w("    {0x%04X, 0x%04X, %d},\n" % (a, b, v))
    w("};\n\n")

    decomp = []
    compose = []
    for cp in range(MAX_CP):
        if is_surrogate(cp) or HANGUL_FIRST <= cp <= HANGUL_LAST:
            continue
        d = ud.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        parts = [int(x, 16) for x in d.split()]
        assert 1 <= len(parts) <= 2, hex(cp)
        decomp.append((cp, parts[0], parts[1] if len(parts) == 2 else 0))
        if len(parts) == 2 and ud.normalize("NFC", chr(cp)) == chr(cp):
            compose.append((parts[0], parts[1], cp))
    w("inline constexpr Decomposition kDecompositions[] = {\n")
    for cp, a, b in decomp:
        w("    {0x%04X, 0x%04X, 0x%04X},\n" % (cp, a, b))
    w("};\n\n")
    compose.sort()
    w("inline constexpr Composition kCompositions[] = {\n")
    for a, b, cp in compose:
        w("    {0x%04X, 0x%04X, 0x%04X},\n" % (a, b, cp))
    w("};\n\n")

    def cat(cp):
        return "" if is_surrogate(cp) else ud.category(chr(cp))

    w("inline constexpr CodeRange kNonspacingMarkRanges[] = {\n")
    for a, b in ranges(lambda cp: cat(cp) == "Mn"):
        w("    {0x%04X, 0x%04X},\n" % (a, b))
    w("};\n\n")
    w("inline constexpr CodeRange kLetterRanges[] = {\n")
    for a, b in ranges(lambda cp: cat(cp).startswith("L")):
        w("    {0x%04X, 0x%04X},\n" % (a, b))
    w("};\n\n")

    lower = []
    for cp in range(MAX_CP):
        if is_surrogate(cp):
            continue
        lo = chr(cp).lower()
        if len(lo) == 1 and ord(lo) != cp:
            lower.append((cp, ord(lo)))
    w("inline constexpr CaseMapping kLowercase[] = {\n")
    for a, b in lower:
        w("    {0x%04X, 0x%04X},\n" % (a, b))
    w("};\n")


if __name__ == "__main__":
    main()
