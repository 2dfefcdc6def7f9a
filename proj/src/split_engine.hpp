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

// Hyperplane construction for one block.
//
// A block's samples are min-max normalized with the block's own statistics.
// Features whose variance does not exceed alpha are dropped, the remaining
// ones are weighted by the gap between target and non-target means (scaled so
// the largest gap has |w| = 1), and features with |w| <= beta are dropped.
// The weighted sum FS(x) of the survivors is then thresholded at a constant c
// picked from the class-wise FS extrema so that, when possible, one side of
// the split holds a single class.

#ifndef LHT_SPLIT_ENGINE_HPP_
#define LHT_SPLIT_ENGINE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dataset.hpp"
#include "matrix.hpp"

namespace lht {

enum class ConstantSource { kMinNFS, kMaxNFS, kMinTFS, kMaxTFS, kAverage };

std::string_view to_string(ConstantSource source);
std::optional<ConstantSource> parse_constant_source(std::string_view name);

// Moments over the (normalized) rows of a block.
struct FeatureStats {
  std::vector<double> mean;     // E[X_i]
  std::vector<double> mean_sq;  // E[X_i^2]
  std::vector<double> mean_t;   // E[X_i] over target rows
  std::vector<double> mean_nt;  // E[X_i] over non-target rows
  std::size_t n = 0;
  std::size_t n_target = 0;
};

FeatureStats compute_feature_stats(const Matrix& rows,
                                   std::span<const std::uint8_t> labels);

// Features with E[X^2] - E[X]^2 > alpha.
std::vector<std::size_t> variance_filter(const FeatureStats& stats,
                                         double alpha);

struct FeatureWeights {
  std::vector<std::size_t> features;  // the candidates, in order
  std::vector<double> sd;             // E[X_i | target] - E[X_i | non-target]
  std::vector<double> weights;        // sd / overline_sd
  double overline_sd = 0.0;
};

// nullopt when every candidate has SD = 0 (or there are no candidates): the
// block is indistinguishable and no hyperplane direction exists.
std::optional<FeatureWeights> feature_weights(
    const FeatureStats& stats, std::span<const std::size_t> candidates);

// Positions p with |weights[p]| > beta.
std::vector<std::size_t> beta_filter(std::span<const double> weights,
                                     double beta);

struct Hyperplane {
  std::vector<std::size_t> features;
  std::vector<double> weights;
  double c = 0.0;
  ConstantSource c_source = ConstantSource::kAverage;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

// Sum of w_i * x_i over the hyperplane's features. `x` must already be
// normalized with the owning block's statistics.
double feature_sum(std::span<const double> x, const Hyperplane& h);

// y(x) = FS(x) - c. Negative values go to the left child.
inline double hyperplane_value(std::span<const double> x, const Hyperplane& h) {
  return feature_sum(x, h) - h.c;
}

// Counts of samples that a candidate constant isolates on a pure side:
// [0] targets below min NFS, [1] targets above max NFS,
// [2] non-targets below min TFS, [3] non-targets above max TFS.
using SideCounts = std::array<std::size_t, 4>;

struct ConstantChoice {
  double c = 0.0;
  ConstantSource source = ConstantSource::kAverage;
  SideCounts counts{};
  double min_tfs = 0.0;
  double max_tfs = 0.0;
  double min_nfs = 0.0;
  double max_nfs = 0.0;
};

// Requires at least one target and one non-target value.
ConstantChoice choose_constant(std::span<const double> fs,
                               std::span<const std::uint8_t> labels,
                               std::size_t gamma);

struct SplitParams {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t gamma = 1;
};

// Normalization and moments of a block, shared by splitting and the
// membership fit.
struct PreparedBlock {
  NormStats norm;
  Matrix normalized;
  FeatureStats stats;
  std::vector<std::size_t> variance_features;
};

PreparedBlock prepare_block(const Matrix& rows,
                            std::span<const std::uint8_t> labels,
                            double alpha);

enum class SplitStatus { kOk, kIndistinguishable, kDegenerate };

struct SplitOutcome {
  Hyperplane hyperplane;
  std::vector<std::size_t> left_rows;
  std::vector<std::size_t> right_rows;
  // Set to the single binary label present on a side, if there is only one.
  std::optional<std::uint8_t> left_pure;
  std::optional<std::uint8_t> right_pure;
  SideCounts counts{};
};

struct SplitResult {
  SplitStatus status = SplitStatus::kOk;
  SplitOutcome outcome;  // meaningful only when status == kOk
};

SplitResult split_prepared(const PreparedBlock& block,
                           std::span<const std::uint8_t> labels,
                           const SplitParams& params);

// Requires >= 2 rows and both labels present. Row indices in the outcome are
// positions within `rows`.
SplitResult split_block(const Matrix& rows,
                        std::span<const std::uint8_t> labels,
                        const SplitParams& params);

}  // namespace lht

#endif  // LHT_SPLIT_ENGINE_HPP_
