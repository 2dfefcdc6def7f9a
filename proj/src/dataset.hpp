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

// Tabular data ingestion and the min-max normalization every block applies
// to its own samples.

#ifndef LHT_DATASET_HPP_
#define LHT_DATASET_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace lht {

struct Dataset {
  Matrix features;
  // Dense class ids in [0, class_names.size()). Empty for unlabeled data.
  std::vector<int> labels;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  std::size_t rows() const { return features.rows(); }
  std::size_t cols() const { return features.cols(); }
  std::size_t num_classes() const { return class_names.size(); }
  bool labeled() const { return !labels.empty(); }

  // Rows by index; class_names and feature_names are kept so ids stay stable.
  Dataset subset(std::span<const std::size_t> indices) const;
};

// `label_column` is matched against header names first, then parsed as a
// zero-based index. Labels are re-encoded densely in first-appearance order.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool header);

// Every column is a feature. Used for prediction input.
Dataset load_features_csv(const std::string& path, bool header);

void write_csv(const Dataset& data, const std::string& path);

// The test part receives round(n * test_fraction) rows. Both parts keep the
// original row order.
std::pair<Dataset, Dataset> train_test_split(const Dataset& data,
                                             double test_fraction,
                                             std::uint64_t seed);

struct NormStats {
  std::vector<double> mins;
  std::vector<double> maxs;

  friend bool operator==(const NormStats&, const NormStats&) = default;
};

NormStats compute_norm_stats(const Matrix& rows);

inline double normalize_value(double v, double min, double max) {
  const double range = max - min;
  if (!(range > 0.0)) return 0.0;
  const double t = (v - min) / range;
  return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
}

// (x - min) / (max - min), clamped to [0, 1]. Constant columns map to 0.
std::vector<double> normalize(std::span<const double> x, const NormStats& s);
void normalize_into(std::span<const double> x, const NormStats& s,
                    std::span<double> out);
Matrix normalize_rows(const Matrix& rows, const NormStats& s);

// One-vs-rest labels: 1 for rows of `target_class`, 0 otherwise.
std::vector<std::uint8_t> binary_labels(const Dataset& data, int target_class);

// A dataset seen as a binary problem for one target class. Holds a reference;
// the base must outlive the view.
struct BinaryView {
  BinaryView(const Dataset& data, int target)
      : base(&data), target_class(target), labels(binary_labels(data, target)) {}

  const Dataset* base;
  int target_class;
  std::vector<std::uint8_t> labels;
};

}  // namespace lht

#endif  // LHT_DATASET_HPP_
