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
#include <exception>

#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"
#include "seq2seq/network_internal.hpp"

namespace ffr::seq2seq {
namespace {

void add_into(ModelParams& dst, const ModelParams& src) {
  std::vector<Tensor*> d;
  dst.for_each([&d](const std::string&, Tensor& t) { d.push_back(&t); });
  std::size_t i = 0;
  src.for_each([&](const std::string&, const Tensor& t) {
    kernels::axpy(1.0, t.values(), d[i++]->values());
  });
}

GradientResult backward_serial(const ModelParams& params, const Batch& batch,
                               const ForwardOptions& options, std::size_t tokens) {
  GradientResult result;
  result.tokens = tokens;
  result.gradient = ModelParams::zeros_like(params);
  const double scale = 1.0 / static_cast<double>(tokens);
  double total = 0.0;
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const auto tgt = batch.target.row(r);
    if (tgt.size() < 2) continue;
    total += detail::run_example(params, batch.source.row(r), tgt, options.teacher_forcing,
                                 mix_seed(options.seed, r), scale, &result.gradient, nullptr);
  }
  result.loss = total / static_cast<double>(tokens);
  return result;
}

GradientResult backward_parallel(const ModelParams& params, const Batch& batch,
                                 const ForwardOptions& options, std::size_t tokens) {
  const std::size_t n = batch.size();
  const std::size_t chunks = std::min(kGradientChunks, n);
  std::vector<ModelParams> partial(chunks);
  std::vector<double> losses(chunks, 0.0);
  const double scale = 1.0 / static_cast<double>(tokens);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(chunks); ++ci) {
    const auto c = static_cast<std::size_t>(ci);
    try {
      partial[c] = ModelParams::zeros_like(params);
      const std::size_t begin = c * n / chunks;
      const std::size_t end = (c + 1) * n / chunks;
      for (std::size_t r = begin; r < end; ++r) {
        const auto tgt = batch.target.row(r);
        if (tgt.size() < 2) continue;
        losses[c] += detail::run_example(params, batch.source.row(r), tgt, options.teacher_forcing,
                                         mix_seed(options.seed, r), scale, &partial[c], nullptr);
      }
    } catch (...) {
#pragma omp critical(ffr_gradient_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  GradientResult result;
  result.tokens = tokens;
  result.gradient = std::move(partial[0]);
  double total = losses[0];
  for (std::size_t c = 1; c < chunks; ++c) {
    add_into(result.gradient, partial[c]);
    total += losses[c];
  }
  result.loss = total / static_cast<double>(tokens);
  return result;
}

}  // namespace

GradientResult backward(const ModelParams& params, const Batch& batch, const ForwardOptions& options,
                        Execution exec) {
  const std::size_t tokens = count_target_tokens(params, batch);
  GradientResult result = exec == Execution::Parallel
                              ? backward_parallel(params, batch, options, tokens)
                              : backward_serial(params, batch, options, tokens);
  if (!std::isfinite(result.loss) || !all_finite(result.gradient)) {
    throw Error(Errc::NonFiniteGradient, "loss or gradient is not finite");
  }
  return result;
}

double global_norm(const ModelParams& grad) {
  double sq = 0.0;
  grad.for_each([&sq](const std::string&, const Tensor& t) {
    for (double v : t.values()) sq += v * v;
  });
  return std::sqrt(sq);
}

double clip_global_norm(ModelParams& grad, double max_norm) {
  const double norm = global_norm(grad);
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    grad.for_each([s](const std::string&, Tensor& t) {
      for (double& v : t.values()) v *= s;
    });
  }
  return norm;
}

}  // namespace ffr::seq2seq
