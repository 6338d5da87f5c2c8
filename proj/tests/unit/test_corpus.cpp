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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"
#include "ffr/corpus/corpus.hpp"
#include "support/testing.hpp"

namespace fs = std::filesystem;
using namespace ffr;
using namespace ffr::corpus;

namespace {

Corpus make(std::initializer_list<std::pair<const char*, const char*>> rows) {
  Corpus c;
  std::int64_t id = 0;
  for (const auto& [s, t] : rows) c.pairs.push_back({id++, s, t, Origin::Other});
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CorpusLoad, EmptyFileGivesEmptyCorpus) {
  testing_support::TempDir dir;
  const fs::path p = dir.write("empty.tsv", "");
  EXPECT_EQ(load_tsv(p).size(), 0u);
}

TEST(CorpusLoad, TwoRows) {
  const Corpus c = parse_tsv("a\tb\nc\td\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.pairs[0], (SentencePair{0, "a", "b", Origin::Other}));
  EXPECT_EQ(c.pairs[1], (SentencePair{1, "c", "d", Origin::Other}));
}

TEST(CorpusLoad, ThreeFieldsIsMalformed) {
  EXPECT_ERRC(parse_tsv("a\tb\tc\n"), Errc::MalformedRow);
  EXPECT_ERRC(parse_tsv("no tab here\n"), Errc::MalformedRow);
}

TEST(CorpusLoad, HeaderSkippedOnRequest) {
  LoadOptions o;
  o.header = true;
  const Corpus c = parse_tsv("fon\tfr\nx\ty\n", o);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.pairs[0].source, "x");
}

TEST(CorpusLoad, InvalidUtf8Rejected) { EXPECT_ERRC(parse_tsv("a\xff\tb\n"), Errc::InvalidUtf8); }

TEST(CorpusLoad, PairedFilesMustAgreeInLength) {
  testing_support::TempDir dir;
  const auto s = dir.write("a.src", "x\ny\n");
  const auto t = dir.write("a.tgt", "u\n");
  EXPECT_ERRC(load_paired(s, t), Errc::LineCountMismatch);
}

TEST(CorpusLoad, MissingFileIsIoError) { EXPECT_ERRC(load_tsv("/nonexistent/x.tsv"), Errc::Io); }

TEST(CorpusExport, RoundTripBothFormats) {
  testing_support::TempDir dir;
  const Corpus c = make({{"mɛ ɖé", "le chemin"}, {"tò", "pays"}, {"wɛ̀", "avec eau"}});
  export_tsv(c, dir / "c.tsv");
  EXPECT_EQ(load_tsv(dir / "c.tsv"), c);
  export_paired(c, dir / "c.src", dir / "c.tgt");
  EXPECT_EQ(load_paired(dir / "c.src", dir / "c.tgt"), c);
}

TEST(CorpusExport, EmptyCorpusGivesEmptyLoadableFile) {
  testing_support::TempDir dir;
  export_tsv(Corpus{}, dir / "e.tsv");
  EXPECT_EQ(fs::file_size(dir / "e.tsv"), 0u);
  EXPECT_TRUE(load_tsv(dir / "e.tsv").empty());
}

TEST(CorpusExport, GoldenFiles) {
  testing_support::TempDir dir;
  const fs::path fixtures = FFR_FIXTURE_DIR;
  const Corpus c = load_tsv(fixtures / "export_200.tsv");
  ASSERT_EQ(c.size(), 200u);
  export_tsv(c, dir / "out.tsv");
  export_paired(c, dir / "out.src", dir / "out.tgt");
  EXPECT_EQ(slurp(dir / "out.tsv"), slurp(fixtures / "export_200.tsv"));
  EXPECT_EQ(slurp(dir / "out.src"), slurp(fixtures / "export_200.src"));
  EXPECT_EQ(slurp(dir / "out.tgt"), slurp(fixtures / "export_200.tgt"));
}

TEST(Clean, DropEmpty) {
  CleanRules rules{{CleanRule::DropEmpty}};
  const auto [out, report] = clean(make({{"", "bonjour"}, {"a", "b"}}), rules);
  EXPECT_EQ(out.size(), 1u);
  EXPECT_EQ(report.dropped_by_rule.at("drop_empty"), 1u);
}

TEST(Clean, DropExactDuplicatesKeepsFirst) {
  CleanRules rules{{CleanRule::DropExactDuplicates}};
  const auto [out, report] = clean(make({{"a b", "c"}, {"x", "y"}, {"a  b", "c"}}), rules);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.pairs[0].id, 0);
  EXPECT_EQ(out.pairs[1].id, 1);
  EXPECT_EQ(report.dropped_by_rule.at("drop_exact_duplicates"), 1u);
}

TEST(Clean, LengthRatioFixture) {
  const Corpus c = load_tsv(fs::path(FFR_FIXTURE_DIR) / "length_ratio_100.tsv");
  ASSERT_EQ(c.size(), 100u);
  CleanRules rules{{CleanRule::DropLengthRatio}};
  const auto [out, report] = clean(c, rules);
  EXPECT_EQ(out.size(), 93u);
  EXPECT_EQ(report.dropped_by_rule.at("drop_length_ratio"), 7u);
}

TEST(Clean, NoLettersAndTransforms) {
  const auto [out, report] = clean(make({{"123 !!", "456"}, {"a\x01  b", " c\t d "}}), CleanRules::all());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.pairs[0].source, "a b");
  EXPECT_EQ(out.pairs[0].target, "c d");
  EXPECT_EQ(report.dropped_by_rule.at("drop_no_letters"), 1u);
}

TEST(Clean, CountsBalanceIdempotentAndOrderPreserving) {
  Rng rng(12);
  const std::vector<std::string> words = {"a", "bb", "", "7", "ɖé", "x y", "  "};
  for (int trial = 0; trial < 50; ++trial) {
    Corpus c;
    for (std::int64_t i = 0; i < 40; ++i) {
      std::string s, t;
      for (std::size_t k = rng.below(5); k > 0; --k) s += words[rng.below(words.size())] + " ";
      for (std::size_t k = rng.below(12); k > 0; --k) t += words[rng.below(words.size())] + " ";
      c.pairs.push_back({i, s, t, Origin::Other});
    }
    const auto [once, report] = clean(c, CleanRules::all());
    std::size_t dropped = 0;
    for (const auto& [rule, n] : report.dropped_by_rule) dropped += n;
    EXPECT_EQ(report.output_count, report.input_count - dropped);
    EXPECT_EQ(once.size(), report.output_count);
    for (std::size_t i = 1; i < once.size(); ++i) EXPECT_LT(once.pairs[i - 1].id, once.pairs[i].id);
    EXPECT_EQ(clean(once, CleanRules::all()).first, once);

    // Cleaned corpora survive export and reload unchanged, ids aside.
    Corpus renumbered = once;
    for (std::size_t i = 0; i < renumbered.size(); ++i) renumbered.pairs[i].id = static_cast<std::int64_t>(i);
    EXPECT_EQ(parse_tsv(to_tsv(renumbered)), renumbered);
  }
}

TEST(Clean, RuleNamesRoundTrip) {
  for (CleanRule r : CleanRules::all().rules) EXPECT_EQ(parse_clean_rule(to_string(r)), r);
  EXPECT_FALSE(parse_clean_rule("drop_everything"));
}

TEST(LengthStats, BucketBoundaries) {
  auto r = length_stats(make({{"a b c d e", "x"}}));
  EXPECT_EQ(r.source.counts, (std::vector<std::size_t>{1, 0, 0, 0}));

  std::string long_source;
  for (int i = 0; i < 31; ++i) long_source += "w ";
  r = length_stats(make({{long_source.c_str(), "x"}}));
  EXPECT_EQ(r.source.counts, (std::vector<std::size_t>{0, 0, 0, 1}));
  EXPECT_EQ(r.source.max_len, 31u);
  EXPECT_EQ(r.labels, (std::vector<std::string>{"1-5", "6-10", "11-30", "31-max"}));
}

TEST(LengthStats, EngineeredFixture) {
  const auto r = length_stats(load_tsv(fs::path(FFR_FIXTURE_DIR) / "buckets_small.tsv"));
  EXPECT_EQ(r.source.counts, (std::vector<std::size_t>{3, 2, 4, 1}));
  EXPECT_EQ(r.target.counts, (std::vector<std::size_t>{4, 3, 2, 1}));
  EXPECT_EQ(r.total, 10u);
}

TEST(LengthStats, Errors) {
  EXPECT_ERRC(length_stats(Corpus{}), Errc::EmptyCorpus);
  EXPECT_ERRC(length_stats(make({{"a", "b"}}), BucketSpec{{10, 5}}), Errc::InvalidArgument);
}

Corpus numbered(std::size_t n) {
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    c.pairs.push_back({static_cast<std::int64_t>(i), "s" + std::to_string(i), "t", i % 3 ? Origin::JW : Origin::BL});
  }
  return c;
}

TEST(Split, FullScaleCounts) {
  SplitSpec spec{SplitCounts{43719, 4858, 5398}, 7, false};
  const auto r = split(numbered(53975), spec);
  EXPECT_EQ(r.train.size(), 43719u);
  EXPECT_EQ(r.valid.size(), 4858u);
  EXPECT_EQ(r.test.size(), 5398u);
  std::vector<bool> seen(53975, false);
  for (const Corpus* part : {&r.train, &r.valid, &r.test}) {
    for (const auto& p : part->pairs) {
      EXPECT_FALSE(seen[static_cast<std::size_t>(p.id)]);
      seen[static_cast<std::size_t>(p.id)] = true;
    }
  }
}

TEST(Split, DegenerateFractions) {
  const auto r = split(numbered(10), SplitSpec{SplitFractions{1.0, 0.0, 0.0}, 1, false});
  EXPECT_EQ(r.train.size(), 10u);
  EXPECT_TRUE(r.valid.empty());
  EXPECT_TRUE(r.test.empty());
}

TEST(Split, DeterministicAndSeedSensitive) {
  const SplitSpec a{SplitFractions{0.8, 0.1, 0.1}, 5, false};
  const auto x = split(numbered(100), a), y = split(numbered(100), a);
  EXPECT_EQ(x.train, y.train);
  EXPECT_EQ(x.test, y.test);
  const auto z = split(numbered(100), SplitSpec{SplitFractions{0.8, 0.1, 0.1}, 6, false});
  EXPECT_NE(x.train, z.train);
}

TEST(Split, StratifiedKeepsOriginMix) {
  const auto r = split(numbered(300), SplitSpec{SplitFractions{0.5, 0.2, 0.3}, 3, true});
  for (const Corpus* part : {&r.train, &r.valid, &r.test}) {
    std::size_t bl = 0;
    for (const auto& p : part->pairs) bl += p.origin == Origin::BL;
    EXPECT_NEAR(static_cast<double>(bl) / static_cast<double>(part->size()), 1.0 / 3.0, 0.02);
  }
}

TEST(Split, SpecMismatch) {
  EXPECT_ERRC(split(numbered(10), SplitSpec{SplitCounts{5, 5, 1}, 0, false}), Errc::SpecMismatch);
  EXPECT_ERRC(split(numbered(10), SplitSpec{SplitFractions{0.5, 0.2, 0.2}, 0, false}), Errc::SpecMismatch);
}

}  // namespace
