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

// Per-block linear membership function.
//
// Each coefficient is the per-feature least-squares slope
//   a_i = (E[X_i P] - E[X_i] E[P]) / (E[X_i^2] - E[X_i]^2)
// and the function is evaluated in centered form
//   p(x) = sum_i a_i (x_i - E[X_i]) + E[P],
// then clipped to [0, 1]. The per-feature slopes solve the full normal
// equations only when the features are mutually uncorrelated within the
// block; no joint solve is attempted.

#ifndef LHT_MEMBERSHIP_HPP_
#define LHT_MEMBERSHIP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "matrix.hpp"

namespace lht {

struct MembershipFn {
  std::vector<double> coeffs;         // a_i, 0 for skipped features
  std::vector<double> feature_means;  // E[X_i]
  double label_mean = 0.0;            // E[P]
  double intercept = 0.0;             // b = E[P] - sum a_i E[X_i]; audit only

  friend bool operator==(const MembershipFn&, const MembershipFn&) = default;
};

// `features` lists the columns allowed a non-zero slope (those that passed
// the variance filter). Columns with zero variance get a_i = 0 regardless.
MembershipFn fit_membership(const Matrix& rows,
                            std::span<const std::uint8_t> labels,
                            std::span<const std::size_t> features);

// Unclipped centered estimate.
double evaluate_p_hat(const MembershipFn& f, std::span<const double> x);

inline double membership_mu(double p_hat) {
  return std::max(0.0, std::min(p_hat, 1.0));
}

// Distance from the decision boundary, capped at 1.
inline double confidence(double y) { return std::min(std::abs(y), 1.0); }

inline double corrected_score(double d, double mu) { return d * mu; }

}  // namespace lht

#endif  // LHT_MEMBERSHIP_HPP_
