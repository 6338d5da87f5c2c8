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
#include "seq2seq/network_internal.hpp"

namespace ffr::seq2seq {
namespace detail {
namespace {

double sigmoid(double a) {
  if (a >= 0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

}  // namespace

void gru_forward(std::span<const double> x, std::span<const double> h_prev, const GruWeights& w,
                 GruCache& c) {
  const std::size_t n = w.hidden_dim();
  c.x.assign(x.begin(), x.end());
  c.h_prev.assign(h_prev.begin(), h_prev.end());

  c.z.assign(w.b_z.values().begin(), w.b_z.values().end());
  c.r.assign(w.b_r.values().begin(), w.b_r.values().end());
  c.h_tilde.assign(w.b_h.values().begin(), w.b_h.values().end());
  kernels::matvec_acc(x, w.W_z, c.z);
  kernels::matvec_acc(h_prev, w.U_z, c.z);
  kernels::matvec_acc(x, w.W_r, c.r);
  kernels::matvec_acc(h_prev, w.U_r, c.r);
  for (std::size_t j = 0; j < n; ++j) {
    c.z[j] = sigmoid(c.z[j]);
    c.r[j] = sigmoid(c.r[j]);
  }

  Vec gated(n);
  for (std::size_t j = 0; j < n; ++j) gated[j] = c.r[j] * h_prev[j];
  kernels::matvec_acc(x, w.W_h, c.h_tilde);
  kernels::matvec_acc(gated, w.U_h, c.h_tilde);

  c.h.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.h_tilde[j] = std::tanh(c.h_tilde[j]);
    c.h[j] = (1.0 - c.z[j]) * h_prev[j] + c.z[j] * c.h_tilde[j];
  }
}

void gru_backward(const GruCache& c, const GruWeights& w, std::span<const double> dh, GruWeights& g,
                  std::span<double> dx, std::span<double> dh_prev) {
  const std::size_t n = w.hidden_dim();
  Vec da_z(n), da_r(n), da_h(n), gated(n), d_gated(n, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    const double dz = dh[j] * (c.h_tilde[j] - c.h_prev[j]);
    const double dht = dh[j] * c.z[j];
    dh_prev[j] += dh[j] * (1.0 - c.z[j]);
    da_h[j] = dht * (1.0 - c.h_tilde[j] * c.h_tilde[j]);
    da_z[j] = dz * c.z[j] * (1.0 - c.z[j]);
    gated[j] = c.r[j] * c.h_prev[j];
  }

  // Candidate state: a_h = x W_h + (r * h_prev) U_h + b_h.
  kernels::outer_acc(c.x, da_h, g.W_h);
  kernels::outer_acc(gated, da_h, g.U_h);
  kernels::axpy(1.0, da_h, g.b_h.values());
  kernels::matvec_t_acc(w.W_h, da_h, dx);
  kernels::matvec_t_acc(w.U_h, da_h, d_gated);

  for (std::size_t j = 0; j < n; ++j) {
    const double dr = d_gated[j] * c.h_prev[j];
    dh_prev[j] += d_gated[j] * c.r[j];
    da_r[j] = dr * c.r[j] * (1.0 - c.r[j]);
  }

  kernels::outer_acc(c.x, da_z, g.W_z);
  kernels::outer_acc(c.h_prev, da_z, g.U_z);
  kernels::axpy(1.0, da_z, g.b_z.values());
  kernels::matvec_t_acc(w.W_z, da_z, dx);
  kernels::matvec_t_acc(w.U_z, da_z, dh_prev);

  kernels::outer_acc(c.x, da_r, g.W_r);
  kernels::outer_acc(c.h_prev, da_r, g.U_r);
  kernels::axpy(1.0, da_r, g.b_r.values());
  kernels::matvec_t_acc(w.W_r, da_r, dx);
  kernels::matvec_t_acc(w.U_r, da_r, dh_prev);
}

}  // namespace detail

std::vector<double> gru_cell(std::span<const double> x, std::span<const double> h_prev,
                             const GruWeights& w) {
  if (x.size() != w.input_dim() || h_prev.size() != w.hidden_dim()) {
    throw Error(Errc::ShapeMismatch, "gru_cell expects input " + std::to_string(w.input_dim()) +
                                         " and hidden " + std::to_string(w.hidden_dim()) +
                                         ", got " + std::to_string(x.size()) + " and " +
                                         std::to_string(h_prev.size()));
  }
  detail::GruCache c;
  detail::gru_forward(x, h_prev, w, c);
  return c.h;
}

}  // namespace ffr::seq2seq
