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

#include "tree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "error.hpp"
#include "parallel.hpp"

namespace lht {
namespace {

std::optional<std::uint8_t> single_label(std::span<const std::uint8_t> labels) {
  if (labels.empty()) return std::nullopt;
  for (std::uint8_t v : labels) {
    if (v != labels.front()) return std::nullopt;
  }
  return labels.front();
}

// These two must produce exactly the values training computed from the
// normalized block matrix, so each feature is normalized with the same helper
// and accumulated in the same order.
double block_y(const Block& b, std::span<const double> x) {
  const Hyperplane& h = *b.hyperplane;
  double sum = 0.0;
  for (std::size_t k = 0; k < h.features.size(); ++k) {
    const std::size_t i = h.features[k];
    sum += h.weights[k] * normalize_value(x[i], b.norm.mins[i], b.norm.maxs[i]);
  }
  return sum - h.c;
}

double leaf_p_hat(const Block& b, std::span<const double> x) {
  const MembershipFn& f = *b.membership;
  double p = f.label_mean;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (f.coeffs[i] != 0.0) {
      p += f.coeffs[i] *
           (normalize_value(x[i], b.norm.mins[i], b.norm.maxs[i]) -
            f.feature_means[i]);
    }
  }
  return p;
}

}  // namespace

void validate(const Hyperparams& hp) {
  if (!(hp.alpha >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  }
  if (!(hp.beta >= 0.0 && hp.beta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must lie in [0, 1)");
  }
  if (hp.gamma == 0) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be >= 1");
  }
  if (hp.min_split == 0) {
    throw Error(ErrorCode::kInvalidArgument, "min_split must be >= 1");
  }
}

TreeShape tree_shape(const LhtTree& tree) {
  TreeShape s;
  for (const Block& b : tree.blocks) {
    (b.is_leaf() ? s.leaves : s.branching)++;
    s.depth = std::max(s.depth, static_cast<std::size_t>(b.depth));
  }
  return s;
}

void check_structure(const LhtTree& tree) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kFormat, "tree for class " +
                                        std::to_string(tree.target_class) +
                                        ": " + why);
  };
  const auto n = static_cast<int>(tree.blocks.size());
  if (n == 0) fail("no blocks");
  if (tree.root_id < 0 || tree.root_id >= n) fail("root id out of range");
  const std::size_t m = tree.blocks[tree.root_id].norm.mins.size();
  std::vector<int> parents(n, 0);
  for (int i = 0; i < n; ++i) {
    const Block& b = tree.blocks[i];
    const std::string at = "block " + std::to_string(i);
    if (b.id != i) fail(at + " has id " + std::to_string(b.id));
    if (b.norm.mins.size() != m || b.norm.maxs.size() != m) {
      fail(at + " has inconsistent normalization width");
    }
    if (b.membership && (b.membership->coeffs.size() != m ||
                         b.membership->feature_means.size() != m)) {
      fail(at + " has inconsistent membership width");
    }
    if (b.is_leaf()) {
      if (b.hyperplane || b.left >= 0 || b.right >= 0) {
        fail(at + " is a leaf with children or a hyperplane");
      }
      if (!b.membership) fail(at + " is a leaf without a membership function");
      continue;
    }
    if (!b.hyperplane) fail(at + " is branching without a hyperplane");
    const Hyperplane& h = *b.hyperplane;
    if (h.features.size() != h.weights.size()) {
      fail(at + " hyperplane features and weights differ in length");
    }
    for (std::size_t f : h.features) {
      if (f >= m) fail(at + " hyperplane feature out of range");
    }
    for (int child : {b.left, b.right}) {
      if (child < 0 || child >= n || child == tree.root_id) {
        fail(at + " has an invalid child");
      }
      if (tree.blocks[child].depth != b.depth + 1) {
        fail(at + " child depth mismatch");
      }
      ++parents[child];
    }
    if (b.left == b.right) fail(at + " has identical children");
  }
  for (int i = 0; i < n; ++i) {
    const int expected = i == tree.root_id ? 0 : 1;
    if (parents[i] != expected) {
      fail("block " + std::to_string(i) + " is reachable from " +
           std::to_string(parents[i]) + " parents");
    }
  }
  // Every node has one parent and depths strictly increase along edges, so
  // the graph is a tree as long as the root sits at the minimum depth.
  if (tree.blocks[tree.root_id].depth != 0) fail("root depth must be 0");
}

LhtTree train_tree(const Matrix& rows, std::span<const std::uint8_t> labels,
                   int target_class, const Hyperparams& hp) {
  validate(hp);
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "training set is empty");
  }
  if (rows.rows() != labels.size()) {
    throw Error(ErrorCode::kInvalidArgument, "row and label counts differ");
  }

  LhtTree tree;
  tree.target_class = target_class;
  tree.hp = hp;
  const SplitParams split_params{hp.alpha, hp.beta, hp.gamma};

  struct Pending {
    int id;
    std::vector<std::size_t> rows;
  };
  std::deque<Pending> queue;
  tree.blocks.emplace_back();
  std::vector<std::size_t> all(rows.rows());
  std::iota(all.begin(), all.end(), std::size_t{0});
  queue.push_back({0, std::move(all)});

  while (!queue.empty()) {
    Pending pending = std::move(queue.front());
    queue.pop_front();

    const Matrix x = rows.select_rows(pending.rows);
    std::vector<std::uint8_t> y(pending.rows.size());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = labels[pending.rows[j]];

    PreparedBlock prep = prepare_block(x, y, hp.alpha);
    Block& block = tree.blocks[pending.id];
    block.id = pending.id;
    block.n_samples = y.size();
    block.norm = prep.norm;
    block.purity = single_label(y);

    bool stop = block.purity.has_value() || y.size() < hp.min_split ||
                static_cast<std::size_t>(block.depth) >= hp.max_depth;
    SplitResult split;
    if (!stop) {
      split = split_prepared(prep, y, split_params);
      stop = split.status != SplitStatus::kOk;
    }
    if (stop || hp.keep_branch_membership) {
      block.membership =
          fit_membership(prep.normalized, y, prep.variance_features);
    }
    if (stop) {
      block.kind = BlockKind::kLeaf;
      continue;
    }

    block.kind = BlockKind::kBranching;
    block.hyperplane = std::move(split.outcome.hyperplane);
    const int depth = block.depth;
    const int left = static_cast<int>(tree.blocks.size());
    const int right = left + 1;
    block.left = left;
    block.right = right;
    // `block` is invalidated below.
    for (int child : {left, right}) {
      Block b;
      b.id = child;
      b.depth = depth + 1;
      tree.blocks.push_back(std::move(b));
    }
    const auto to_global = [&](const std::vector<std::size_t>& local) {
      std::vector<std::size_t> global(local.size());
      for (std::size_t j = 0; j < local.size(); ++j) {
        global[j] = pending.rows[local[j]];
      }
      return global;
    };
    queue.push_back({left, to_global(split.outcome.left_rows)});
    queue.push_back({right, to_global(split.outcome.right_rows)});
  }
  return tree;
}

LhtTree train_tree(const BinaryView& view, const Hyperparams& hp) {
  return train_tree(view.base->features, view.labels, view.target_class, hp);
}

PredictionTrace find_leaf(const LhtTree& tree, std::span<const double> x) {
  check_dimension(x.size(), tree.num_features(), "find_leaf");
  PredictionTrace trace;
  int id = tree.root_id;
  while (!tree.blocks[id].is_leaf()) {
    const Block& b = tree.blocks[id];
    const double y = block_y(b, x);
    trace.path.push_back({id, y});
    trace.final_d = confidence(y);
    id = y < 0.0 ? b.left : b.right;
  }
  trace.path.push_back({id, std::nullopt});
  trace.mu = membership_mu(leaf_p_hat(tree.blocks[id], x));
  trace.score = corrected_score(trace.final_d, trace.mu);
  return trace;
}

double score_tree(const LhtTree& tree, std::span<const double> x) {
  check_dimension(x.size(), tree.num_features(), "score_tree");
  const Block* b = &tree.blocks[tree.root_id];
  double d = 1.0;
  while (!b->is_leaf()) {
    const double y = block_y(*b, x);
    d = confidence(y);
    b = &tree.blocks[y < 0.0 ? b->left : b->right];
  }
  return corrected_score(d, membership_mu(leaf_p_hat(*b, x)));
}

double TrainTiming::max_tree_ms() const {
  double best = 0.0;
  for (const auto& per_class : tree_ms) {
    for (double v : per_class) best = std::max(best, v);
  }
  return best;
}

double TrainTiming::sum_tree_ms() const {
  double total = 0.0;
  for (const auto& per_class : tree_ms) {
    for (double v : per_class) total += v;
  }
  return total;
}

MulticlassModel train_multiclass(const Dataset& train, const Hyperparams& hp,
                                 unsigned threads, TrainTiming* timing) {
  validate(hp);
  const std::size_t k = train.num_classes();
  if (k < 2) {
    throw Error(ErrorCode::kData, "at least two classes are required");
  }
  std::vector<std::size_t> counts(k, 0);
  for (int label : train.labels) ++counts[label];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) {
      throw Error(ErrorCode::kData, "class '" + train.class_names[c] +
                                        "' has no training rows");
    }
  }

  MulticlassModel model;
  model.schema = {train.feature_names, train.class_names};
  model.hp = hp;
  model.trees.resize(k);
  std::vector<double> tree_ms(k, 0.0);
  const auto start = Clock::now();
  parallel_for(k, threads, [&](std::size_t c) {
    const auto t0 = Clock::now();
    model.trees[c] = train_tree(BinaryView(train, static_cast<int>(c)), hp);
    tree_ms[c] = elapsed_ms(t0);
  });
  if (timing) {
    timing->wall_ms = elapsed_ms(start);
    timing->tree_ms.clear();
    for (double ms : tree_ms) timing->tree_ms.push_back({ms});
  }
  return model;
}

int argmax_lowest(std::span<const double> scores) {
  int best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = static_cast<int>(i);
  }
  return best;
}

Prediction predict(const MulticlassModel& model, std::span<const double> x) {
  Prediction p;
  p.scores.reserve(model.trees.size());
  for (const LhtTree& tree : model.trees) p.scores.push_back(score_tree(tree, x));
  p.label = argmax_lowest(p.scores);
  return p;
}

}  // namespace lht
