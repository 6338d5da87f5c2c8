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


// Serial reference vs OpenMP kernels. The second argument selects the
// execution mode: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ffr/common/rng.hpp"
#include "ffr/metrics/metrics.hpp"
#include "ffr/seq2seq/network.hpp"
#include "ffr/textnorm/textnorm.hpp"
#include "support/synthetic.hpp"

namespace {

using namespace ffr;

Execution mode(const benchmark::State& state) {
  return state.range(1) ? Execution::Parallel : Execution::Serial;
}

void BM_Backward(benchmark::State& state) {
  seq2seq::ModelConfig cfg;
  cfg.embed_dim = 64;
  cfg.hidden_dim = 64;
  cfg.attn_dim = 16;
  cfg.src_vocab = 200;
  cfg.tgt_vocab = 200;
  const auto params = seq2seq::init_model(cfg);
  Rng rng(1);
  std::vector<tokenizer::EncodedPair> pairs(static_cast<std::size_t>(state.range(0)));
  for (auto& e : pairs) {
    for (std::size_t k = 5 + rng.below(10); k > 0; --k) e.source_ids.push_back(static_cast<int>(4 + rng.below(196)));
    e.source_ids.push_back(tokenizer::kEos);
    e.target_ids.push_back(tokenizer::kSos);
    for (std::size_t k = 5 + rng.below(10); k > 0; --k) e.target_ids.push_back(static_cast<int>(4 + rng.below(196)));
    e.target_ids.push_back(tokenizer::kEos);
  }
  const auto batch = seq2seq::make_batch(pairs);
  for (auto _ : state) benchmark::DoNotOptimize(seq2seq::backward(params, batch, {}, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Backward)->ArgsProduct({{32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_NormalizeLines(benchmark::State& state) {
  synthetic::DiacriticCorpusOptions o;
  o.pairs = static_cast<std::size_t>(state.range(0));
  const auto lines = synthetic::diacritic_corpus(o).corpus.sentences(corpus::Side::Source);
  for (auto _ : state) {
    benchmark::DoNotOptimize(textnorm::normalize_lines(lines, textnorm::Form::NFC, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NormalizeLines)->ArgsProduct({{20000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SentenceScores(benchmark::State& state) {
  Rng rng(2);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<metrics::Tokens> refs(n), hyps(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 5 + rng.below(25); k > 0; --k) refs[i].push_back("w" + std::to_string(rng.below(300)));
    for (std::size_t k = 5 + rng.below(25); k > 0; --k) hyps[i].push_back("w" + std::to_string(rng.below(300)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::sentence_scores(refs, hyps, metrics::SentenceMetric::Bleu, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SentenceScores)->ArgsProduct({{5000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
