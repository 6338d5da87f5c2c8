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

"""Regenerates the committed test fixtures. Output is deterministic."""

import json
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent
FON = ["mɛ", "ɖé", "wɛ̀", "nú", "tò", "gbè", "xwé", "àsì", "kpó", "yì", "ɔ", "sín"]
FR = ["le", "la", "de", "maison", "eau", "chemin", "venir", "avec", "pays", "et", "un"]


def sentence(rng, words, n):
    return " ".join(rng.choice(words) for _ in range(n))


def bucket(n):
    return 0 if n <= 5 else 1 if n <= 10 else 2 if n <= 30 else 3


def write_buckets(name, lengths, seed):
    rng = random.Random(seed)
    rows, src, tgt = [], [0] * 4, [0] * 4
    for s, t in lengths:
        rows.append(f"{sentence(rng, FON, s)}\t{sentence(rng, FR, t)}\n")
        src[bucket(s)] += 1
        tgt[bucket(t)] += 1
    (HERE / f"{name}.tsv").write_text("".join(rows), encoding="utf-8")
    expected = {
        "source": src,
        "target": tgt,
        "max_source": max(s for s, _ in lengths),
        "max_target": max(t for _, t in lengths),
        "total": len(lengths),
    }
    (HERE / f"{name}.expected.json").write_text(json.dumps(expected, indent=2) + "\n")


def write_length_ratio(seed):
    # 100 pairs, 7 of which exceed a 3:1 token ratio in either direction.
    rng = random.Random(seed)
    bad = set(rng.sample(range(100), 7))
    rows = []
    for i in range(100):
        if i in bad:
            short = rng.randint(1, 3)
            long = 3 * short + rng.randint(1, 4)
            s, t = (short, long) if i % 2 else (long, short)
        else:
            s = rng.randint(2, 8)
            t = rng.randint(max(1, -(-s // 3)), 3 * s)
        rows.append(f"{sentence(rng, FON, s)}\t{sentence(rng, FR, t)}\n")
    (HERE / "length_ratio_100.tsv").write_text("".join(rows), encoding="utf-8")


def write_export(seed):
    rng = random.Random(seed)
    rows = []
    for _ in range(200):
        rows.append(f"{sentence(rng, FON, rng.randint(1, 12))}\t{sentence(rng, FR, rng.randint(1, 12))}\n")
    (HERE / "export_200.tsv").write_text("".join(rows), encoding="utf-8")
    (HERE / "export_200.src").write_text("".join(r.split("\t")[0] + "\n" for r in rows), encoding="utf-8")
    (HERE / "export_200.tgt").write_text("".join(r.split("\t")[1] for r in rows), encoding="utf-8")


if __name__ == "__main__":
    # Ten pairs: source buckets (3, 2, 4, 1), target buckets (4, 3, 2, 1).
    write_buckets("buckets_small",
                  [(1, 2), (4, 5), (5, 3), (6, 7), (10, 4), (11, 9), (17, 10),
                   (25, 12), (30, 31), (42, 28)], seed=1)
    # Every bucket edge on both sides.
    write_buckets("buckets_boundaries",
                  [(5, 6), (6, 5), (10, 11), (11, 10), (30, 31), (31, 30), (1, 1), (60, 2)],
                  seed=2)
    write_length_ratio(seed=3)
    write_export(seed=4)
