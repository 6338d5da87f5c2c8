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

#include <cstddef>
#include <span>
#include <vector>

namespace ffr::seq2seq {

/// Dense row-major tensor of doubles, rank 1 or 2.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape);

  static Tensor vector(std::size_t n) { return Tensor({n}); }
  static Tensor matrix(std::size_t rows, std::size_t cols) { return Tensor({rows, cols}); }

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t rows() const noexcept { return shape_.empty() ? 0 : shape_[0]; }
  std::size_t cols() const noexcept { return shape_.size() < 2 ? 1 : shape_[1]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

  std::span<double> row(std::size_t r) { return std::span(data_).subspan(r * cols(), cols()); }
  std::span<const double> row(std::size_t r) const {
    return std::span(data_).subspan(r * cols(), cols());
  }

  void fill(double v);
  bool same_shape(const Tensor& other) const noexcept { return shape_ == other.shape_; }

  bool operator==(const Tensor&) const = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Dense kernels used by the recurrent network. Matrices are laid out
/// [inputs x outputs], so a layer computes y = x W.
namespace kernels {

/// y += x W
void matvec_acc(std::span<const double> x, const Tensor& w, std::span<double> y);

/// dx += W dy
void matvec_t_acc(const Tensor& w, std::span<const double> dy, std::span<double> dx);

/// dW += x (outer) dy
void outer_acc(std::span<const double> x, std::span<const double> dy, Tensor& dw);

/// y += a x
void axpy(double a, std::span<const double> x, std::span<double> y);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace kernels

}  // namespace ffr::seq2seq
