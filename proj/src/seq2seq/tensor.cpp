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

#include "ffr/seq2seq/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ffr::seq2seq {

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)),
      data_(std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>()),
            0.0) {}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

namespace kernels {

void matvec_acc(std::span<const double> x, const Tensor& w, std::span<double> y) {
  const std::size_t n = w.cols();
  const double* wp = w.values().data();
  double* yp = y.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* wr = wp + i * n;
    for (std::size_t j = 0; j < n; ++j) yp[j] += xi * wr[j];
  }
}

void matvec_t_acc(const Tensor& w, std::span<const double> dy, std::span<double> dx) {
  const std::size_t n = w.cols();
  const double* wp = w.values().data();
  for (std::size_t i = 0; i < dx.size(); ++i) {
    const double* wr = wp + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += wr[j] * dy[j];
    dx[i] += acc;
  }
}

void outer_acc(std::span<const double> x, std::span<const double> dy, Tensor& dw) {
  const std::size_t n = dw.cols();
  double* wp = dw.values().data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    double* wr = wp + i * n;
    for (std::size_t j = 0; j < n; ++j) wr[j] += xi * dy[j];
  }
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace kernels
}  // namespace ffr::seq2seq
