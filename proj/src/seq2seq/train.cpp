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
#include <cmath>
#include <limits>
#include <numeric>

#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"
#include "ffr/metrics/metrics.hpp"
#include "ffr/seq2seq/train.hpp"
#include "ffr/seq2seq/translate.hpp"

namespace ffr::seq2seq {
namespace {

// Stream tags keep the shuffle and teacher-forcing draws independent.
constexpr std::uint64_t kShuffleTag = 0x5348554646ULL;
constexpr std::uint64_t kForcingTag = 0x54464f524345ULL;

std::vector<EncodedPair> gather(std::span<const EncodedPair> data,
                                std::span<const std::size_t> order, std::size_t begin,
                                std::size_t end) {
  std::vector<EncodedPair> out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) out.push_back(data[order[i]]);
  return out;
}

// Drops pairs with nothing to predict so every batch has a loss.
std::vector<EncodedPair> trainable(std::span<const EncodedPair> data) {
  std::vector<EncodedPair> out;
  for (const auto& p : data) {
    if (p.target_ids.size() >= 2 && !p.source_ids.empty()) out.push_back(p);
  }
  return out;
}

metrics::Tokens id_tokens(std::span<const TokenId> ids) {
  metrics::Tokens out;
  for (TokenId id : ids) {
    if (id == tokenizer::kEos) break;
    if (id == tokenizer::kSos || id == tokenizer::kPad) continue;
    out.push_back(std::to_string(id));
  }
  return out;
}

double valid_bleu(const ModelParams& params, std::span<const EncodedPair> data,
                  const TrainConfig& cfg) {
  const std::vector<IdSequence> hyps = decode_all(params, data, cfg.max_decode_len, cfg.execution);
  std::vector<metrics::Tokens> refs, outs;
  for (std::size_t k = 0; k < data.size(); ++k) {
    refs.push_back(id_tokens(data[k].target_ids));
    outs.push_back(id_tokens(hyps[k]));
  }
  return metrics::bleu_corpus(std::span<const metrics::Tokens>(refs),
                              std::span<const metrics::Tokens>(outs))
      .score;
}

}  // namespace

double evaluate_loss(const ModelParams& params, std::span<const EncodedPair> data,
                     std::size_t batch_size, Execution exec) {
  const std::vector<EncodedPair> usable = trainable(data);
  if (usable.empty()) throw Error(Errc::EmptyTarget, "no pair has a target token to predict");
  batch_size = std::max<std::size_t>(batch_size, 1);
  std::vector<double> sums((usable.size() + batch_size - 1) / batch_size, 0.0);
  std::vector<std::size_t> counts(sums.size(), 0);
  auto run = [&](std::size_t b) {
    const std::size_t begin = b * batch_size;
    const std::size_t end = std::min(begin + batch_size, usable.size());
    const Batch batch = make_batch(std::span<const EncodedPair>(usable).subspan(begin, end - begin));
    const ForwardResult r = forward(params, batch);
    sums[b] = r.loss * static_cast<double>(r.tokens);
    counts[b] = r.tokens;
  };
  const auto nb = static_cast<std::ptrdiff_t>(sums.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) run(static_cast<std::size_t>(b));
  } else {
    for (std::ptrdiff_t b = 0; b < nb; ++b) run(static_cast<std::size_t>(b));
  }
  double total = 0.0;
  std::size_t tokens = 0;
  for (std::size_t b = 0; b < sums.size(); ++b) {
    total += sums[b];
    tokens += counts[b];
  }
  return total / static_cast<double>(tokens);
}

TrainResult train(ModelParams params, std::span<const EncodedPair> train_set,
                  std::span<const EncodedPair> valid_set, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  const std::vector<EncodedPair> data = trainable(train_set);
  if (data.empty()) throw Error(Errc::EmptyCorpus, "training set has no usable pair");
  const std::vector<EncodedPair> valid = trainable(valid_set);

  Optimizer optimizer(params, cfg);
  TrainResult result;
  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng shuffler(mix_seed(cfg.seed, kShuffleTag));
  std::uint64_t step = 0;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffler.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    std::size_t token_sum = 0;
    for (std::size_t begin = 0; begin < data.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(begin + cfg.batch_size, data.size());
      const std::vector<EncodedPair> pairs = gather(data, order, begin, end);
      const Batch batch = make_batch(pairs);
      ForwardOptions fo;
      fo.teacher_forcing = cfg.teacher_forcing;
      fo.seed = mix_seed(mix_seed(cfg.seed, kForcingTag), step++);
      GradientResult g = backward(params, batch, fo, cfg.execution);
      if (cfg.grad_clip > 0.0) clip_global_norm(g.gradient, cfg.grad_clip);
      optimizer.step(params, g.gradient);
      loss_sum += g.loss * static_cast<double>(g.tokens);
      token_sum += g.tokens;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(token_sum);
    rec.valid_loss = std::numeric_limits<double>::quiet_NaN();
    rec.valid_bleu = std::numeric_limits<double>::quiet_NaN();
    if (!valid.empty()) {
      rec.valid_loss = evaluate_loss(params, valid, cfg.batch_size, cfg.execution);
      if (cfg.valid_bleu) rec.valid_bleu = valid_bleu(params, valid, cfg);
      if (rec.valid_loss < best_loss) {
        best_loss = rec.valid_loss;
        result.params = params;
        result.history.best_epoch = epoch;
      }
    }
    result.history.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  if (!result.history.best_epoch) result.params = std::move(params);
  return result;
}

}  // namespace ffr::seq2seq
