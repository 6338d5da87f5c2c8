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
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ffr/common/execution.hpp"
#include "ffr/seq2seq/model.hpp"
#include "ffr/seq2seq/network.hpp"

namespace ffr::seq2seq {

enum class OptimizerKind { Sgd, Adam };

std::string_view to_string(OptimizerKind kind) noexcept;
std::optional<OptimizerKind> parse_optimizer(std::string_view name) noexcept;

struct TrainConfig {
  std::size_t epochs = 10;
  std::size_t batch_size = 32;
  double learning_rate = 1e-3;
  OptimizerKind optimizer = OptimizerKind::Adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double teacher_forcing = 1.0;
  /// Global-norm bound; 0 disables clipping.
  double grad_clip = 5.0;
  std::uint64_t seed = 0;
  Execution execution = Execution::Serial;
  /// Greedy-decode the validation set every epoch to report BLEU.
  bool valid_bleu = true;
  std::size_t max_decode_len = 128;

  /// Throws InvalidArgument for lr < 0, a teacher-forcing ratio outside
  /// [0, 1], zero batch size or negative clip bound.
  void validate() const;
};

/// SGD or Adam over the full parameter set.
class Optimizer {
 public:
  Optimizer(const ModelParams& shape, const TrainConfig& cfg);

  void step(ModelParams& params, const ModelParams& grad);

  std::size_t steps_taken() const noexcept { return steps_; }

 private:
  OptimizerKind kind_;
  double lr_, beta1_, beta2_, eps_;
  std::size_t steps_ = 0;
  ModelParams m_, v_;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  /// NaN when there is no validation set.
  double valid_loss = 0.0;
  double valid_bleu = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  /// Epoch (1-based) whose parameters were retained; empty without a
  /// validation set, in which case the final parameters are returned.
  std::optional<std::size_t> best_epoch;
};

struct TrainResult {
  ModelParams params;
  TrainHistory history;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Mini-batch training with per-epoch reshuffling. Deterministic for a given
/// seed; with a validation set the lowest-validation-loss parameters are
/// returned. Throws EmptyCorpus for an empty training set.
TrainResult train(ModelParams params, std::span<const EncodedPair> train_set,
                  std::span<const EncodedPair> valid_set, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

/// Mean token cross-entropy of a dataset under teacher forcing.
double evaluate_loss(const ModelParams& params, std::span<const EncodedPair> data,
                     std::size_t batch_size = 64, Execution exec = Execution::Serial);

}  // namespace ffr::seq2seq
