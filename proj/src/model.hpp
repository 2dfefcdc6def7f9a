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

#ifndef LHT_MODEL_HPP_
#define LHT_MODEL_HPP_

#include <span>
#include <variant>
#include <vector>

#include "forest.hpp"
#include "tree.hpp"

namespace lht {

// A trained classifier: one tree per class, or t trees per class.
using Model = std::variant<MulticlassModel, LhForest>;

inline bool is_forest(const Model& model) {
  return std::holds_alternative<LhForest>(model);
}

const Schema& model_schema(const Model& model);

// Trees grouped by class; a single-tree model yields groups of size one.
std::vector<std::vector<const LhtTree*>> trees_by_class(const Model& model);

Prediction predict(const Model& model, std::span<const double> x);

struct EvalReport {
  std::size_t rows = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  double total_ms = 0.0;     // wall time of scoring every row
  double max_tree_ms = 0.0;  // slowest single tree over every row
  std::vector<int> predicted;
};

// Scores `data` tree by tree so each tree's cost can be timed on its own.
// Predictions are bit-identical to predict(). Labels are matched to model
// classes by name.
EvalReport evaluate(const Model& model, const Dataset& data,
                    unsigned threads = 1);

}  // namespace lht

#endif  // LHT_MODEL_HPP_
