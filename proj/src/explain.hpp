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

// Interpretability exports: the feature weights of every branching block, a
// Graphviz rendering of each tree, and a flat CSV of weights for plotting.

#ifndef LHT_EXPLAIN_HPP_
#define LHT_EXPLAIN_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "model.hpp"

namespace lht {

struct FeatureWeight {
  std::size_t feature = 0;
  std::string name;
  double weight = 0.0;
};

struct BlockExplanation {
  int target_class = 0;
  std::string class_name;
  std::size_t tree_index = 0;  // always 0 for single-tree models
  int block_id = 0;
  // Every feature, sorted by |weight| descending (ties by feature index).
  // Features outside the hyperplane carry weight 0.
  std::vector<FeatureWeight> weights;
  double c = 0.0;
  ConstantSource c_source = ConstantSource::kAverage;
  std::size_t n_samples = 0;
  BlockKind left_kind = BlockKind::kLeaf;
  BlockKind right_kind = BlockKind::kLeaf;
};

// One entry per branching block, ordered by class, tree, block id.
std::vector<BlockExplanation> explain_model(const Model& model);

// One digraph per tree. Deterministic for a given model.
std::string export_dot(const Model& model);

// Header `class,block_id,feature,weight` (forests add a `tree` column after
// `class`). One row per feature per branching block, in feature order.
void write_weights_csv(const Model& model, std::ostream& out);
void export_weights_csv(const Model& model, const std::string& path);

}  // namespace lht

#endif  // LHT_EXPLAIN_HPP_
