/*
 * Copyright 2026 The LHT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "membership.hpp"

#include <cassert>

#include "error.hpp"

namespace lht {

MembershipFn fit_membership(const Matrix& rows,
                            std::span<const std::uint8_t> labels,
                            std::span<const std::size_t> features) {
  assert(rows.rows() == labels.size() && rows.rows() > 0);
  const std::size_t m = rows.cols();
  const double n = static_cast<double>(rows.rows());

  std::vector<double> sum_x(m, 0.0), sum_xx(m, 0.0), sum_xp(m, 0.0);
  double sum_p = 0.0;
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto x = rows.row(r);
    const double p = labels[r] ? 1.0 : 0.0;
    sum_p += p;
    for (std::size_t i = 0; i < m; ++i) {
      sum_x[i] += x[i];
      sum_xx[i] += x[i] * x[i];
      sum_xp[i] += x[i] * p;
    }
  }

  MembershipFn f;
  f.coeffs.assign(m, 0.0);
  f.feature_means.resize(m);
  f.label_mean = sum_p / n;
  for (std::size_t i = 0; i < m; ++i) f.feature_means[i] = sum_x[i] / n;

  for (std::size_t i : features) {
    const double mean = f.feature_means[i];
    const double variance = sum_xx[i] / n - mean * mean;
    if (!(variance > 0.0)) continue;
    f.coeffs[i] = (sum_xp[i] / n - mean * f.label_mean) / variance;
  }

  f.intercept = f.label_mean;
  for (std::size_t i = 0; i < m; ++i) {
    f.intercept -= f.coeffs[i] * f.feature_means[i];
  }
  return f;
}

double evaluate_p_hat(const MembershipFn& f, std::span<const double> x) {
  check_dimension(x.size(), f.coeffs.size(), "evaluate_p_hat");
  double p = f.label_mean;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (f.coeffs[i] != 0.0) p += f.coeffs[i] * (x[i] - f.feature_means[i]);
  }
  return p;
}

}  // namespace lht
