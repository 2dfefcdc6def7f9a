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

// One-vs-rest hyperplane trees and their multiclass aggregation.
//
// A tree grows from a root block holding every training row. Each block
// either splits with a hyperplane (branching) or stops and keeps a fitted
// membership function (leaf). Classification walks from the root, going left
// while y(x) < 0, and scores the reached leaf as d(x) * mu(x), where d(x) is
// the capped distance to the last hyperplane crossed.

#ifndef LHT_TREE_HPP_
#define LHT_TREE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "membership.hpp"
#include "split_engine.hpp"

namespace lht {

struct Hyperparams {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t gamma = 1;
  std::size_t min_split = 2;
  std::size_t max_depth = 64;
  // Keep the membership fit of branching blocks too (analysis only).
  bool keep_branch_membership = false;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

// Throws Error(kInvalidArgument) on alpha < 0, beta outside [0, 1),
// gamma == 0 or min_split == 0.
void validate(const Hyperparams& hp);

enum class BlockKind { kBranching, kLeaf };

struct Block {
  int id = 0;
  BlockKind kind = BlockKind::kLeaf;
  int depth = 0;
  std::size_t n_samples = 0;
  NormStats norm;
  std::optional<Hyperplane> hyperplane;    // branching only
  std::optional<MembershipFn> membership;  // always on leaves
  int left = -1;
  int right = -1;
  // Binary label (1 = target) when every sample in the block shares it.
  std::optional<std::uint8_t> purity;

  bool is_leaf() const { return kind == BlockKind::kLeaf; }

  friend bool operator==(const Block&, const Block&) = default;
};

struct LhtTree {
  int target_class = 0;
  int root_id = 0;
  std::vector<Block> blocks;  // blocks[i].id == i
  Hyperparams hp;

  std::size_t num_features() const { return blocks.front().norm.mins.size(); }

  friend bool operator==(const LhtTree&, const LhtTree&) = default;
};

struct TreeShape {
  std::size_t branching = 0;
  std::size_t leaves = 0;
  std::size_t depth = 0;
};

TreeShape tree_shape(const LhtTree& tree);

// Throws Error(kFormat) unless the blocks form a proper binary tree rooted at
// root_id with consistent kinds, depths and per-block dimensions.
void check_structure(const LhtTree& tree);

LhtTree train_tree(const Matrix& rows, std::span<const std::uint8_t> labels,
                   int target_class, const Hyperparams& hp);
LhtTree train_tree(const BinaryView& view, const Hyperparams& hp);

struct TraceStep {
  int block_id = 0;
  std::optional<double> y;  // empty for the final leaf
};

struct PredictionTrace {
  std::vector<TraceStep> path;
  double final_d = 1.0;
  double mu = 0.0;
  double score = 0.0;
};

PredictionTrace find_leaf(const LhtTree& tree, std::span<const double> x);

// d(x) * mu(x) at the reached leaf; allocation free.
double score_tree(const LhtTree& tree, std::span<const double> x);

struct Schema {
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  friend bool operator==(const Schema&, const Schema&) = default;
};

// Wall time of a training run and of each tree, grouped by class.
struct TrainTiming {
  double wall_ms = 0.0;
  std::vector<std::vector<double>> tree_ms;

  double max_tree_ms() const;
  double sum_tree_ms() const;
};

struct MulticlassModel {
  Schema schema;
  Hyperparams hp;
  std::vector<LhtTree> trees;  // trees[k].target_class == k

  friend bool operator==(const MulticlassModel&,
                         const MulticlassModel&) = default;
};

// Requires every class to be present in `train`. Per-class trees are trained
// concurrently on up to `threads` workers; the result does not depend on the
// thread count.
MulticlassModel train_multiclass(const Dataset& train, const Hyperparams& hp,
                                 unsigned threads = 1,
                                 TrainTiming* timing = nullptr);

struct Prediction {
  int label = 0;
  std::vector<double> scores;
};

// Index of the largest score; ties go to the lowest index.
int argmax_lowest(std::span<const double> scores);

Prediction predict(const MulticlassModel& model, std::span<const double> x);

}  // namespace lht

#endif  // LHT_TREE_HPP_
