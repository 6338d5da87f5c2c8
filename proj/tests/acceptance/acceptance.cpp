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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Pass criterion names to run a subset.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>
#include <unistd.h>

#include "ffr/cms/store.hpp"
#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"
#include "ffr/corpus/corpus.hpp"
#include "ffr/metrics/metrics.hpp"
#include "ffr/seq2seq/checkpoint.hpp"
#include "ffr/seq2seq/network.hpp"
#include "ffr/seq2seq/train.hpp"
#include "ffr/seq2seq/translate.hpp"
#include "ffr/textnorm/textnorm.hpp"
#include "ffr/textnorm/unicode.hpp"
#include "ffr/tokenizer/tokenizer.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace ffr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ffr_acceptance_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------

Outcome gradient_suite() {
  const auto start = Clock::now();
  seq2seq::ModelConfig cfg;
  cfg.embed_dim = 4;
  cfg.hidden_dim = 3;
  cfg.attn_dim = 2;
  cfg.src_vocab = 7;
  cfg.tgt_vocab = 7;
  cfg.seed = 2024;
  seq2seq::ModelParams p = seq2seq::init_model(cfg);
  // Non-zero biases so every bias gradient is exercised away from symmetry.
  Rng rng(99);
  p.for_each([&rng](const std::string& name, seq2seq::Tensor& t) {
    if (seq2seq::init_bound(name, t) == 0.0) {
      for (double& v : t.values()) v = rng.uniform(-0.5, 0.5);
    }
  });

  std::vector<tokenizer::EncodedPair> pairs;
  for (int i = 0; i < 3; ++i) {
    tokenizer::EncodedPair e;
    const std::size_t sl = 2 + rng.below(3), tl = 1 + rng.below(3);
    for (std::size_t k = 0; k < sl; ++k) e.source_ids.push_back(static_cast<int>(3 + rng.below(4)));
    e.source_ids.push_back(tokenizer::kEos);
    e.target_ids.push_back(tokenizer::kSos);
    for (std::size_t k = 0; k < tl; ++k) e.target_ids.push_back(static_cast<int>(3 + rng.below(4)));
    e.target_ids.push_back(tokenizer::kEos);
    pairs.push_back(e);
  }
  const seq2seq::Batch batch = seq2seq::make_batch(pairs);
  const seq2seq::GradientResult g = seq2seq::backward(p, batch);

  const double eps = 1e-4;
  double worst = 0.0;
  std::string worst_name;
  std::size_t tensors = 0;
  seq2seq::ModelParams probe = p;
  std::vector<seq2seq::Tensor*> probe_tensors;
  probe.for_each([&](const std::string&, seq2seq::Tensor& t) { probe_tensors.push_back(&t); });
  std::size_t index = 0;
  g.gradient.for_each([&](const std::string& name, const seq2seq::Tensor& analytic) {
    seq2seq::Tensor& t = *probe_tensors[index++];
    ++tensors;
    double tensor_worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double saved = t.values()[k];
      t.values()[k] = saved + eps;
      const double up = seq2seq::forward(probe, batch).loss;
      t.values()[k] = saved - eps;
      const double down = seq2seq::forward(probe, batch).loss;
      t.values()[k] = saved;
      const double numeric = (up - down) / (2.0 * eps);
      const double a = analytic.values()[k];
      const double scale = std::max({std::fabs(a), std::fabs(numeric), 1e-8});
      tensor_worst = std::max(tensor_worst, std::fabs(a - numeric) / scale);
    }
    if (tensor_worst > worst) {
      worst = tensor_worst;
      worst_name = name;
    }
  });
  const double secs = seconds_since(start);
  return {worst < 1e-3 && secs < 30.0,
          std::to_string(tensors) + " tensors, max relative error " + fmt(worst) + " (" + worst_name + "), " +
              fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------

struct Encoded {
  tokenizer::Vocabulary src, tgt;
  std::vector<tokenizer::EncodedPair> pairs;
};

Encoded encode_corpus(const corpus::Corpus& c) {
  Encoded e{tokenizer::Vocabulary::build(c.sentences(corpus::Side::Source)),
            tokenizer::Vocabulary::build(c.sentences(corpus::Side::Target)),
            {}};
  for (const auto& p : c.pairs) e.pairs.push_back(tokenizer::encode_pair(p.source, p.target, e.src, e.tgt));
  return e;
}

seq2seq::ModelConfig small_config(const Encoded& e, std::uint64_t seed) {
  seq2seq::ModelConfig cfg;
  cfg.embed_dim = 32;
  cfg.hidden_dim = 64;
  cfg.attn_dim = 16;
  cfg.src_vocab = e.src.size();
  cfg.tgt_vocab = e.tgt.size();
  cfg.seed = seed;
  return cfg;
}

seq2seq::TrainResult train_copy_task(const Encoded& e, std::size_t epochs) {
  seq2seq::TrainConfig tc;
  tc.epochs = epochs;
  tc.batch_size = 8;
  tc.learning_rate = 1e-2;
  tc.seed = 5;
  return seq2seq::train(seq2seq::init_model(small_config(e, 5)), e.pairs, {}, tc);
}

Outcome overfit_suite() {
  const auto start = Clock::now();
  const Encoded e = encode_corpus(synthetic::copy_task(32, 17));
  const auto result = train_copy_task(e, 300);
  const double acc = seq2seq::token_accuracy(result.params, e.pairs);
  const double secs = seconds_since(start);
  return {acc >= 0.99 && secs < 300.0, "token accuracy " + fmt(acc, 4) + " after 300 epochs, final loss " +
                                           fmt(result.history.epochs.back().train_loss) + ", " + fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------

Outcome metric_oracle_suite() {
  Rng rng(31337);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f"};
  auto sentence = [&] {
    oracle::Words s(1 + rng.below(9));
    for (auto& w : s) w = words[rng.below(words.size())];
    return s;
  };
  std::vector<oracle::Words> refs, hyps;
  for (int i = 0; i < 200; ++i) {
    refs.push_back(sentence());
    hyps.push_back(rng.bernoulli(0.1) ? oracle::Words{} : sentence());
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    for (bool smooth : {false, true}) {
      const double got = metrics::bleu_sentence(refs[i], hyps[i], 4,
                                                smooth ? metrics::Smoothing::AddOne2Plus : metrics::Smoothing::None);
      worst = std::max(worst, std::fabs(got - oracle::bleu_sentence(refs[i], hyps[i], smooth)));
    }
    worst = std::max(worst, std::fabs(metrics::gleu_sentence(refs[i], hyps[i]).score -
                                      oracle::gleu_sentence(refs[i], hyps[i])));
  }
  worst = std::max(worst, std::fabs(metrics::bleu_corpus(std::span<const metrics::Tokens>(refs),
                                                         std::span<const metrics::Tokens>(hyps))
                                        .score -
                                    oracle::bleu_corpus(refs, hyps)));
  // Sub-corpora of every size exercise the pooled counts.
  for (std::size_t n = 1; n <= refs.size(); n += 13) {
    const std::vector<oracle::Words> r(refs.begin(), refs.begin() + static_cast<std::ptrdiff_t>(n));
    const std::vector<oracle::Words> h(hyps.begin(), hyps.begin() + static_cast<std::ptrdiff_t>(n));
    worst = std::max(worst, std::fabs(metrics::bleu_corpus(std::span<const metrics::Tokens>(r),
                                                           std::span<const metrics::Tokens>(h))
                                          .score -
                                      oracle::bleu_corpus(r, h)));
  }

  bool identity = true, disjoint = true;
  for (const auto& r : refs) {
    identity &= metrics::bleu_sentence(r, r) == 1.0 && metrics::gleu_sentence(r, r).score == 1.0;
    oracle::Words other;
    for (const auto& w : r) other.push_back(w + "_x");
    disjoint &= metrics::bleu_sentence(r, other) == 0.0 && metrics::gleu_sentence(r, other).score == 0.0;
  }

  // Corpus BLEU needs at least one 4-gram, so identity is checked on the pool.
  identity &= metrics::bleu_corpus(std::span<const metrics::Tokens>(refs), std::span<const metrics::Tokens>(refs)).score == 1.0;

  const auto clip = metrics::bleu_corpus(std::vector<std::string>{"the cat is on the mat"},
                                         std::vector<std::string>{"the the the the the the the"});
  const bool p1 = clip.precisions[0] == 2.0 / 7.0 && clip.matches[0] == 2 && clip.candidates[0] == 7;

  return {worst <= 1e-12 && identity && disjoint && p1,
          "max |lib - oracle| " + fmt(worst) + " over 200 pairs; identity " + (identity ? "1.0" : "FAILED") +
              ", disjoint " + (disjoint ? "0.0" : "FAILED") + ", p_1 " + std::to_string(clip.matches[0]) + "/" +
              std::to_string(clip.candidates[0])};
}

// ---------------------------------------------------------------------------

double pipeline_bleu(const corpus::SplitResult& parts, textnorm::Form form, std::uint64_t seed) {
  const corpus::Corpus train_c = textnorm::normalize_corpus(parts.train, form);
  const corpus::Corpus test_c = textnorm::normalize_corpus(parts.test, form);
  const Encoded e = encode_corpus(train_c);

  seq2seq::TrainConfig tc;
  tc.epochs = 30;
  tc.batch_size = 16;
  tc.learning_rate = 5e-3;
  tc.seed = seed;
  const auto result = seq2seq::train(seq2seq::init_model(small_config(e, seed)), e.pairs, {}, tc);

  std::vector<std::string> refs, hyps;
  for (const auto& p : test_c.pairs) {
    const auto t = seq2seq::translate(result.params, p.source, e.src, e.tgt, 32);
    refs.push_back(p.target);
    hyps.push_back(t.text);
  }
  return metrics::bleu_corpus(std::span<const std::string>(refs), std::span<const std::string>(hyps)).score;
}

Outcome de_direction_check() {
  const auto start = Clock::now();
  int wins = 0;
  std::string scores;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    synthetic::DiacriticCorpusOptions o;
    o.seed = 1000 + seed;
    const auto data = synthetic::diacritic_corpus(o);
    corpus::SplitSpec spec;
    spec.sizes = corpus::SplitCounts{400, 0, 100};
    spec.seed = seed;
    const auto parts = corpus::split(data.corpus, spec);
    const double nfc = pipeline_bleu(parts, textnorm::Form::NFC, seed);
    const double strip = pipeline_bleu(parts, textnorm::Form::NFDStripMarks, seed);
    wins += nfc > strip;
    scores += (seed > 1 ? ", " : "") + fmt(nfc) + " vs " + fmt(strip);
  }
  const double secs = seconds_since(start);
  return {wins >= 4 && secs < 900.0,
          std::to_string(wins) + "/5 seeds favour NFC (test BLEU NFC vs stripped: " + scores + "), " + fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------

std::u32string random_text(Rng& rng) {
  // Pools weighted towards characters with interesting canonical behaviour.
  static const std::vector<std::pair<char32_t, char32_t>> pools = {
      {0x0041, 0x007A}, {0x00C0, 0x024F}, {0x0300, 0x036F}, {0x0250, 0x02AF}, {0x1E00, 0x1EFF},
      {0x0370, 0x03FF}, {0x0400, 0x04FF}, {0x0591, 0x05C7}, {0x0900, 0x097F}, {0x0E30, 0x0E4E},
      {0x1100, 0x11FF}, {0xAC00, 0xD7A3}, {0x1DC0, 0x1DFF}, {0x20D0, 0x20F0}, {0x3099, 0x309A},
      {0x0F71, 0x0F84}, {0x1D15E, 0x1D172}, {0x2126, 0x212B}, {0xF900, 0xFAFF}, {0x0020, 0x0020}};
  std::u32string s(rng.below(13), U'a');
  for (auto& c : s) {
    if (rng.bernoulli(0.05)) {
      char32_t cp;
      do {
        cp = static_cast<char32_t>(rng.below(0x110000));
      } while (cp >= 0xD800 && cp <= 0xDFFF);
      c = cp;
    } else {
      const auto& [lo, hi] = pools[rng.below(pools.size())];
      c = lo + static_cast<char32_t>(rng.below(hi - lo + 1));
    }
  }
  return s;
}

Outcome normalization_suite() {
  const auto start = Clock::now();
  using textnorm::Form;
  Rng rng(8675309);
  std::size_t failures = 0;
  std::string first_failure;
  for (int i = 0; i < 100000; ++i) {
    const std::u32string x = random_text(rng);
    const std::u32string nfc = textnorm::normalize(x, Form::NFC);
    const std::u32string nfd = textnorm::normalize(x, Form::NFD);
    const std::u32string strip = textnorm::normalize(x, Form::NFDStripMarks);
    bool ok = textnorm::normalize(nfc, Form::NFC) == nfc && textnorm::normalize(nfd, Form::NFD) == nfd &&
              textnorm::normalize(strip, Form::NFDStripMarks) == strip &&
              textnorm::normalize(nfd, Form::NFC) == nfc && textnorm::normalize(nfc, Form::NFD) == nfd &&
              textnorm::is_normalized(nfc, Form::NFC) && textnorm::is_normalized(nfd, Form::NFD);
    for (char32_t c : strip) ok &= !unicode::is_nonspacing_mark(c);
    if (!ok && failures++ == 0) {
      std::string hex;
      for (char32_t c : x) hex += std::to_string(static_cast<std::uint32_t>(c)) + " ";
      first_failure = " (first: " + hex + ")";
    }
  }

  const std::vector<std::string> family = {"tó", "tò", "tô"};
  std::set<std::string> nfc, stripped;
  for (const auto& w : family) {
    nfc.insert(textnorm::normalize(w, Form::NFC));
    stripped.insert(textnorm::normalize(w, Form::NFDStripMarks));
  }
  corpus::Corpus c;
  c.pairs.push_back({0, "tó tò tô", "oreilles mer pays", corpus::Origin::Other});
  const auto fams = textnorm::find_diacritic_families(c, corpus::Side::Source);
  const bool family_ok = nfc.size() == 3 && stripped.size() == 1 && *stripped.begin() == "to" &&
                         fams.size() == 1 && fams[0].skeleton == "to" && fams[0].variants.size() == 3;
  const double secs = seconds_since(start);
  return {failures == 0 && family_ok,
          "100000 fuzz strings, " + std::to_string(failures) + " property failures" + first_failure + "; {tó,tò,tô}: " +
              std::to_string(nfc.size()) + " NFC forms, " + std::to_string(stripped.size()) + " stripped skeleton, " +
              fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------

Outcome length_buckets() {
  const fs::path dir = FFR_FIXTURE_DIR;
  bool exact = true;
  std::string detail;
  for (const char* name : {"buckets_small", "buckets_boundaries"}) {
    const corpus::Corpus c = corpus::load_tsv(dir / (std::string(name) + ".tsv"));
    std::ifstream in(dir / (std::string(name) + ".expected.json"));
    const auto want = nlohmann::json::parse(in);
    const auto r = corpus::length_stats(c);
    const bool ok = r.source.counts == want["source"].get<std::vector<std::size_t>>() &&
                    r.target.counts == want["target"].get<std::vector<std::size_t>>() &&
                    r.source.max_len == want["max_source"].get<std::size_t>() &&
                    r.target.max_len == want["max_target"].get<std::size_t>() && r.total == want["total"].get<std::size_t>();
    exact &= ok;
    detail += std::string(name) + (ok ? " exact" : " MISMATCH") + "; ";
  }

  // Bucket sums equal the corpus size for arbitrary corpora.
  Rng rng(4);
  bool sums = true;
  for (int trial = 0; trial < 200; ++trial) {
    corpus::Corpus c;
    const std::size_t n = 1 + rng.below(60);
    for (std::size_t i = 0; i < n; ++i) {
      std::string s, t;
      for (std::size_t k = rng.below(45); k > 0; --k) s += "w ";
      for (std::size_t k = rng.below(45); k > 0; --k) t += " m";
      c.pairs.push_back({static_cast<std::int64_t>(i), s, t, corpus::Origin::Other});
    }
    const auto r = corpus::length_stats(c);
    std::size_t src = 0, tgt = 0;
    for (auto v : r.source.counts) src += v;
    for (auto v : r.target.counts) tgt += v;
    sums &= src == n && tgt == n && r.total == n;
  }
  return {exact && sums, detail + "bucket sums equal corpus size in 200 random corpora: " + (sums ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------

bool replay_matches_live(std::uint64_t seed, const fs::path& dir) {
  const fs::path log = dir / ("events_" + std::to_string(seed) + ".jsonl");
  std::optional<nlohmann::ordered_json> live_state, live_report;
  {
    cms::StoreOptions opts;
    opts.log_path = log;
    cms::Store store(std::move(opts));
    Rng rng(seed);
    cms::TaskSpec spec;
    const std::size_t items = 2 + rng.below(3), annotators = 2 + rng.below(3);
    for (std::size_t i = 0; i < items; ++i) {
      spec.items.push_back({"i" + std::to_string(i), "src", "pred", "ref"});
    }
    for (std::size_t a = 0; a < annotators; ++a) spec.annotators.push_back("a" + std::to_string(a));
    spec.alpha = 0.7;
    const std::string task = store.create_task(spec);

    std::vector<std::thread> threads;
    for (std::size_t a = 0; a < annotators; ++a) {
      threads.emplace_back([&, a] {
        Rng local(mix_seed(seed, a));
        const std::string who = "a" + std::to_string(a);
        // Some annotators stop early so partial states are replayed too.
        const bool finish = local.bernoulli(0.8);
        for (cms::Phase phase : {cms::Phase::P1, cms::Phase::P2}) {
          std::vector<std::size_t> order(items);
          for (std::size_t i = 0; i < items; ++i) order[i] = i;
          local.shuffle(std::span<std::size_t>(order));
          for (std::size_t i : order) {
            if (!finish && local.bernoulli(0.3)) continue;
            const double score = static_cast<double>(local.below(101)) / 100.0;
            // Rejected attempts must leave no trace.
            try {
              store.submit_score(task, who, "i" + std::to_string(i), cms::Phase::P2, score);
            } catch (const Error&) {
            }
            try {
              store.submit_score(task, who, "i" + std::to_string(i), phase, score);
              store.submit_score(task, who, "i" + std::to_string(i), phase, score);
            } catch (const Error&) {
            }
            if (local.bernoulli(0.5)) std::this_thread::yield();
          }
        }
      });
    }
    for (auto& t : threads) t.join();
    live_state = store.state_json();
    live_report = store.report(task);
  }
  const auto replayed = cms::Store::replay(log);
  const auto again = cms::Store::replay(log);
  return replayed->state_json() == *live_state && again->state_json() == *live_state &&
         replayed->report(replayed->task_ids().front()) == *live_report;
}

Outcome cms_arithmetic() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double t = i / 10.0, tr = j / 10.0;
      const long double exact = (7.0L * i + 3.0L * j) / 100.0L;
      worst = std::max(worst, static_cast<double>(std::fabs(metrics::cms_total(t, tr, 0.7) - exact)));
    }
  }

  // Five annotators on one item; hand computation:
  //   0.7*0.8+0.3*0.6 = 0.74, 1.0, 0.7*0.5+0.3*0.9 = 0.62,
  //   0.7*0.2+0.3*0.4 = 0.26, 0.7*0.9+0.3*0.7 = 0.84  -> mean 3.46/5 = 0.692
  cms::Store store;
  cms::TaskSpec spec;
  spec.items = {{"s4", "source", "prediction", "reference"}};
  const std::string task = store.create_task(spec);
  const std::vector<std::pair<double, double>> scores = {{0.8, 0.6}, {1.0, 1.0}, {0.5, 0.9}, {0.2, 0.4}, {0.9, 0.7}};
  for (std::size_t a = 0; a < scores.size(); ++a) {
    const std::string who = "annotator-" + std::to_string(a + 1);
    store.submit_score(task, who, "s4", cms::Phase::P1, scores[a].first);
    store.submit_score(task, who, "s4", cms::Phase::P2, scores[a].second);
  }
  const auto report = store.report(task);
  const double item = report["items"][0]["cms"].get<double>();
  const bool five = std::fabs(item - 0.692) < 1e-12 && std::fabs(report["task_cms"].get<double>() - 0.692) < 1e-12 &&
                    report["status"] == "CLOSED";

  const fs::path dir = scratch_dir("cms");
  std::size_t agree = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) agree += replay_matches_live(seed, dir);
  fs::remove_all(dir);
  const double secs = seconds_since(start);
  return {worst <= 1e-15 && five && agree == 1000,
          "11x11 grid max error " + fmt(worst) + "; five-annotator item CMS " + fmt(item, 6) + " (hand 0.692); " +
              std::to_string(agree) + "/1000 concurrent runs replay to the live state, " + fmt(secs) + " s"};
}

// ---------------------------------------------------------------------------

std::vector<std::uint8_t> float_bytes(const seq2seq::ModelParams& p) {
  std::vector<std::uint8_t> out;
  p.for_each([&out](const std::string&, const seq2seq::Tensor& t) {
    for (double v : t.values()) {
      const float f = static_cast<float>(v);
      const auto* b = reinterpret_cast<const std::uint8_t*>(&f);
      out.insert(out.end(), b, b + sizeof f);
    }
  });
  return out;
}

Outcome checkpoint_round_trip() {
  const Encoded e = encode_corpus(synthetic::copy_task(32, 17));
  const auto trained = train_copy_task(e, 40);
  const seq2seq::ModelConfig cfg = small_config(e, 5);
  const fs::path dir = scratch_dir("ckpt");
  seq2seq::save_checkpoint(trained.params, cfg, dir / "model.ckpt");
  const auto loaded = seq2seq::load_checkpoint(dir / "model.ckpt");
  seq2seq::save_checkpoint(loaded.params, loaded.config, dir / "again.ckpt");

  const bool bytes = float_bytes(trained.params) == float_bytes(loaded.params) && loaded.config == cfg &&
                     seq2seq::serialize_checkpoint(trained.params, cfg) ==
                         seq2seq::serialize_checkpoint(loaded.params, loaded.config);
  const bool exact_f32 = loaded.params == seq2seq::round_to_float(trained.params);

  const corpus::Corpus probes = synthetic::copy_task(10, 555);
  std::size_t same = 0;
  for (const auto& p : probes.pairs) {
    const auto a = seq2seq::translate(trained.params, p.source, e.src, e.tgt, 32);
    const auto b = seq2seq::translate(loaded.params, p.source, e.src, e.tgt, 32);
    same += a.text == b.text && a.ids == b.ids;
  }
  fs::remove_all(dir);
  return {bytes && exact_f32 && same == 10,
          std::string("tensor bytes ") + (bytes && exact_f32 ? "bitwise equal" : "DIFFER") + ", " +
              std::to_string(same) + "/10 probe translations identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gradient", gradient_suite},          {"overfit", overfit_suite},
      {"metric-oracle", metric_oracle_suite}, {"de-direction", de_direction_check},
      {"normalization", normalization_suite}, {"length-buckets", length_buckets},
      {"cms-arithmetic", cms_arithmetic},     {"checkpoint", checkpoint_round_trip},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!wanted.empty() && !wanted.count(name)) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %-15s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
