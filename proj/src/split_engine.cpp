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

#include "split_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace lht {

namespace {

constexpr std::array<std::string_view, 5> kSourceNames = {
    "MinNFS", "MaxNFS", "MinTFS", "MaxTFS", "Average"};

std::optional<std::uint8_t> single_label(
    std::span<const std::size_t> rows, std::span<const std::uint8_t> labels) {
  if (rows.empty()) return std::nullopt;
  const std::uint8_t first = labels[rows.front()];
  for (std::size_t r : rows) {
    if (labels[r] != first) return std::nullopt;
  }
  return first;
}

}  // namespace

std::string_view to_string(ConstantSource source) {
  return kSourceNames[static_cast<std::size_t>(source)];
}

std::optional<ConstantSource> parse_constant_source(std::string_view name) {
  for (std::size_t i = 0; i < kSourceNames.size(); ++i) {
    if (kSourceNames[i] == name) return static_cast<ConstantSource>(i);
  }
  return std::nullopt;
}

FeatureStats compute_feature_stats(const Matrix& rows,
                                   std::span<const std::uint8_t> labels) {
  assert(labels.size() == rows.rows());
  const std::size_t m = rows.cols();
  FeatureStats s;
  s.mean.assign(m, 0.0);
  s.mean_sq.assign(m, 0.0);
  s.mean_t.assign(m, 0.0);
  s.mean_nt.assign(m, 0.0);
  s.n = rows.rows();
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto x = rows.row(r);
    auto& side = labels[r] ? s.mean_t : s.mean_nt;
    if (labels[r]) ++s.n_target;
    for (std::size_t i = 0; i < m; ++i) {
      s.mean[i] += x[i];
      s.mean_sq[i] += x[i] * x[i];
      side[i] += x[i];
    }
  }
  const std::size_t n_nt = s.n - s.n_target;
  for (std::size_t i = 0; i < m; ++i) {
    s.mean[i] /= static_cast<double>(s.n);
    s.mean_sq[i] /= static_cast<double>(s.n);
    if (s.n_target > 0) s.mean_t[i] /= static_cast<double>(s.n_target);
    if (n_nt > 0) s.mean_nt[i] /= static_cast<double>(n_nt);
  }
  return s;
}

std::vector<std::size_t> variance_filter(const FeatureStats& stats,
                                         double alpha) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < stats.mean.size(); ++i) {
    if (stats.mean_sq[i] - stats.mean[i] * stats.mean[i] > alpha) {
      kept.push_back(i);
    }
  }
  return kept;
}

std::optional<FeatureWeights> feature_weights(
    const FeatureStats& stats, std::span<const std::size_t> candidates) {
  if (candidates.empty()) return std::nullopt;
  FeatureWeights fw;
  fw.features.assign(candidates.begin(), candidates.end());
  fw.sd.reserve(candidates.size());
  for (std::size_t i : candidates) {
    fw.sd.push_back(stats.mean_t[i] - stats.mean_nt[i]);
  }
  const auto [lo, hi] = std::minmax_element(fw.sd.begin(), fw.sd.end());
  fw.overline_sd = std::max(std::abs(*lo), std::abs(*hi));
  if (!(fw.overline_sd > 0.0)) return std::nullopt;
  fw.weights.reserve(fw.sd.size());
  for (double sd : fw.sd) fw.weights.push_back(sd / fw.overline_sd);
  return fw;
}

std::vector<std::size_t> beta_filter(std::span<const double> weights,
                                     double beta) {
  std::vector<std::size_t> kept;
  for (std::size_t p = 0; p < weights.size(); ++p) {
    if (std::abs(weights[p]) > beta) kept.push_back(p);
  }
  return kept;
}

double feature_sum(std::span<const double> x, const Hyperplane& h) {
  double sum = 0.0;
  for (std::size_t k = 0; k < h.features.size(); ++k) {
    const std::size_t i = h.features[k];
    if (i >= x.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feature_sum: hyperplane uses feature " + std::to_string(i) +
                      " but the sample has " + std::to_string(x.size()));
    }
    sum += h.weights[k] * x[i];
  }
  return sum;
}

ConstantChoice choose_constant(std::span<const double> fs,
                               std::span<const std::uint8_t> labels,
                               std::size_t gamma) {
  assert(fs.size() == labels.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  ConstantChoice out;
  out.min_tfs = out.min_nfs = kInf;
  out.max_tfs = out.max_nfs = -kInf;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (labels[j]) {
      out.min_tfs = std::min(out.min_tfs, fs[j]);
      out.max_tfs = std::max(out.max_tfs, fs[j]);
    } else {
      out.min_nfs = std::min(out.min_nfs, fs[j]);
      out.max_nfs = std::max(out.max_nfs, fs[j]);
    }
  }
  assert(out.min_tfs != kInf && out.min_nfs != kInf);

  SideCounts& n = out.counts;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (labels[j]) {
      if (fs[j] < out.min_nfs) ++n[0];
      if (fs[j] > out.max_nfs) ++n[1];
    } else {
      if (fs[j] < out.min_tfs) ++n[2];
      if (fs[j] > out.max_tfs) ++n[3];
    }
  }

  const std::size_t n_max = *std::max_element(n.begin(), n.end());
  if (n_max < gamma || n_max == 0) {
    out.source = ConstantSource::kAverage;
    out.c = (out.min_nfs + out.max_nfs + out.min_tfs + out.max_tfs) / 4.0;
    return out;
  }
  const auto winner =
      static_cast<std::size_t>(std::find(n.begin(), n.end(), n_max) - n.begin());
  out.source = static_cast<ConstantSource>(winner);

  // Split rule is y < 0 -> left. A "below" constant can sit on the boundary
  // value itself; an "above" constant must sit strictly between the boundary
  // and the next larger FS so the boundary sample stays on the left.
  const auto above = [&](double boundary) {
    double next = kInf;
    for (double v : fs) {
      if (v > boundary) next = std::min(next, v);
    }
    const double mid = boundary + (next - boundary) / 2.0;
    return mid > boundary ? mid : next;
  };
  switch (out.source) {
    case ConstantSource::kMinNFS: out.c = out.min_nfs; break;
    case ConstantSource::kMaxNFS: out.c = above(out.max_nfs); break;
    case ConstantSource::kMinTFS: out.c = out.min_tfs; break;
    case ConstantSource::kMaxTFS: out.c = above(out.max_tfs); break;
    case ConstantSource::kAverage: break;
  }
  return out;
}

PreparedBlock prepare_block(const Matrix& rows,
                            std::span<const std::uint8_t> labels,
                            double alpha) {
  PreparedBlock block;
  block.norm = compute_norm_stats(rows);
  block.normalized = normalize_rows(rows, block.norm);
  block.stats = compute_feature_stats(block.normalized, labels);
  block.variance_features = variance_filter(block.stats, alpha);
  return block;
}

SplitResult split_prepared(const PreparedBlock& block,
                           std::span<const std::uint8_t> labels,
                           const SplitParams& params) {
  SplitResult result;
  auto weights = feature_weights(block.stats, block.variance_features);
  if (!weights) {
    result.status = SplitStatus::kIndistinguishable;
    return result;
  }

  Hyperplane& h = result.outcome.hyperplane;
  for (std::size_t p : beta_filter(weights->weights, params.beta)) {
    h.features.push_back(weights->features[p]);
    h.weights.push_back(weights->weights[p]);
  }

  const Matrix& x = block.normalized;
  std::vector<double> fs(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) fs[r] = feature_sum(x.row(r), h);

  const ConstantChoice choice = choose_constant(fs, labels, params.gamma);
  h.c = choice.c;
  h.c_source = choice.source;
  result.outcome.counts = choice.counts;

  for (std::size_t r = 0; r < x.rows(); ++r) {
    if (fs[r] - h.c < 0.0) {
      result.outcome.left_rows.push_back(r);
    } else {
      result.outcome.right_rows.push_back(r);
    }
  }
  if (result.outcome.left_rows.empty() || result.outcome.right_rows.empty()) {
    result.status = SplitStatus::kDegenerate;
    return result;
  }
  result.outcome.left_pure = single_label(result.outcome.left_rows, labels);
  result.outcome.right_pure = single_label(result.outcome.right_rows, labels);
  return result;
}

SplitResult split_block(const Matrix& rows,
                        std::span<const std::uint8_t> labels,
                        const SplitParams& params) {
  if (rows.rows() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "split_block: row and label counts differ");
  }
  return split_prepared(prepare_block(rows, labels, params.alpha), labels,
                        params);
}

}  // namespace lht
