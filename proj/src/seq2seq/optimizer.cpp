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

#include <cmath>

#include "ffr/common/error.hpp"
#include "ffr/seq2seq/train.hpp"

namespace ffr::seq2seq {
namespace {

std::vector<Tensor*> tensors(ModelParams& p) {
  std::vector<Tensor*> out;
  p.for_each([&out](const std::string&, Tensor& t) { out.push_back(&t); });
  return out;
}

std::vector<const Tensor*> tensors(const ModelParams& p) {
  std::vector<const Tensor*> out;
  p.for_each([&out](const std::string&, const Tensor& t) { out.push_back(&t); });
  return out;
}

}  // namespace

std::string_view to_string(OptimizerKind kind) noexcept {
  return kind == OptimizerKind::Adam ? "adam" : "sgd";
}

std::optional<OptimizerKind> parse_optimizer(std::string_view name) noexcept {
  if (name == "adam" || name == "ADAM") return OptimizerKind::Adam;
  if (name == "sgd" || name == "SGD") return OptimizerKind::Sgd;
  return std::nullopt;
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0)) throw Error(Errc::InvalidArgument, "learning_rate must be >= 0");
  if (!(teacher_forcing >= 0.0 && teacher_forcing <= 1.0)) {
    throw Error(Errc::InvalidArgument, "teacher_forcing must lie in [0, 1]");
  }
  if (batch_size == 0) throw Error(Errc::InvalidArgument, "batch_size must be >= 1");
  if (!(grad_clip >= 0.0)) throw Error(Errc::InvalidArgument, "grad_clip must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0 && epsilon > 0.0)) {
    throw Error(Errc::InvalidArgument, "Adam hyperparameters out of range");
  }
}

Optimizer::Optimizer(const ModelParams& shape, const TrainConfig& cfg)
    : kind_(cfg.optimizer),
      lr_(cfg.learning_rate),
      beta1_(cfg.beta1),
      beta2_(cfg.beta2),
      eps_(cfg.epsilon) {
  if (kind_ == OptimizerKind::Adam) {
    m_ = ModelParams::zeros_like(shape);
    v_ = ModelParams::zeros_like(shape);
  }
}

void Optimizer::step(ModelParams& params, const ModelParams& grad) {
  ++steps_;
  auto p = tensors(params);
  auto g = tensors(grad);
  if (kind_ == OptimizerKind::Sgd) {
    for (std::size_t i = 0; i < p.size(); ++i) kernels::axpy(-lr_, g[i]->values(), p[i]->values());
    return;
  }
  auto m = tensors(m_);
  auto v = tensors(v_);
  const double t = static_cast<double>(steps_);
  const double c1 = 1.0 - std::pow(beta1_, t);
  const double c2 = 1.0 - std::pow(beta2_, t);
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto pv = p[i]->values();
    auto gv = g[i]->values();
    auto mv = m[i]->values();
    auto vv = v[i]->values();
    for (std::size_t k = 0; k < pv.size(); ++k) {
      mv[k] = beta1_ * mv[k] + (1.0 - beta1_) * gv[k];
      vv[k] = beta2_ * vv[k] + (1.0 - beta2_) * gv[k] * gv[k];
      pv[k] -= lr_ * (mv[k] / c1) / (std::sqrt(vv[k] / c2) + eps_);
    }
  }
}

}  // namespace ffr::seq2seq
