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

#include "ffr/common/error.hpp"
#include "ffr/metrics/metrics.hpp"

namespace ffr::metrics {
namespace {

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(Errc::DomainError, std::string(name) + " = " + std::to_string(x) + " is outside [0, 1]");
  }
}

double mean(std::span<const double> xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

}  // namespace

double cms_total(double t, double t_r, double alpha) {
  check_unit(t, "t");
  check_unit(t_r, "t_r");
  check_unit(alpha, "alpha");
  return alpha * t + (1.0 - alpha) * t_r;
}

CmsScorePair make_cms_score(double t, double t_r, double alpha) {
  return CmsScorePair{t, t_r, alpha, cms_total(t, t_r, alpha)};
}

double cms_item(std::span<const CmsScorePair> annotator_scores) {
  std::vector<double> totals;
  totals.reserve(annotator_scores.size());
  for (const auto& s : annotator_scores) totals.push_back(s.t_total);
  return cms_item(totals);
}

double cms_item(std::span<const double> annotator_totals) {
  if (annotator_totals.empty()) throw Error(Errc::NoScores, "item has no annotator scores");
  return mean(annotator_totals);
}

double cms_task(std::span<const double> item_scores) {
  if (item_scores.empty()) throw Error(Errc::NoScores, "task has no scored items");
  return mean(item_scores);
}

}  // namespace ffr::metrics
