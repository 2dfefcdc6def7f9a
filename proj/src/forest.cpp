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

#include "forest.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace lht {
namespace {

constexpr int kMaxBagAttempts = 16;

}  // namespace

std::string_view to_string(ForestStrategy strategy) {
  return strategy == ForestStrategy::kBagging ? "bagging" : "beta-sweep";
}

std::optional<ForestStrategy> parse_forest_strategy(std::string_view name) {
  if (name == "beta-sweep") return ForestStrategy::kBetaSweep;
  if (name == "bagging") return ForestStrategy::kBagging;
  return std::nullopt;
}

void validate(const ForestSpec& spec) {
  if (spec.trees == 0) {
    throw Error(ErrorCode::kInvalidArgument, "a forest needs at least 1 tree");
  }
  if (spec.strategy == ForestStrategy::kBagging &&
      !(spec.bag_fraction > 0.0 && spec.bag_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "bag fraction must lie in (0, 1]");
  }
}

std::optional<std::vector<std::size_t>> draw_bag(
    std::span<const std::uint8_t> labels, double bag_fraction,
    std::uint64_t seed, std::size_t target_class, std::size_t tree_index) {
  const std::size_t n = labels.size();
  const auto size = static_cast<std::size_t>(
      std::ceil(bag_fraction * static_cast<double>(n)));
  for (int attempt = 0; attempt < kMaxBagAttempts; ++attempt) {
    auto rng = make_rng({seed, target_class, tree_index,
                         static_cast<std::uint64_t>(attempt)});
    std::vector<std::size_t> bag(size);
    bool has_target = false;
    bool has_other = false;
    for (auto& row : bag) {
      row = uniform_below(rng, n);
      (labels[row] ? has_target : has_other) = true;
    }
    if (has_target && has_other) {
      std::sort(bag.begin(), bag.end());
      return bag;
    }
  }
  return std::nullopt;
}

LhForest train_forest(const Dataset& train, const Hyperparams& hp,
                      const ForestSpec& spec, unsigned threads,
                      TrainTiming* timing) {
  validate(hp);
  validate(spec);
  const std::size_t k = train.num_classes();
  if (k < 2) {
    throw Error(ErrorCode::kData, "at least two classes are required");
  }

  LhForest forest;
  forest.schema = {train.feature_names, train.class_names};
  forest.hp = hp;
  forest.spec = spec;
  forest.trees.assign(k, std::vector<LhtTree>(spec.trees));
  std::vector<std::vector<double>> tree_ms(k,
                                           std::vector<double>(spec.trees));

  std::vector<std::vector<std::uint8_t>> labels(k);
  for (std::size_t c = 0; c < k; ++c) {
    labels[c] = binary_labels(train, static_cast<int>(c));
    if (std::find(labels[c].begin(), labels[c].end(), 1) == labels[c].end()) {
      throw Error(ErrorCode::kData, "class '" + train.class_names[c] +
                                        "' has no training rows");
    }
  }

  const auto start = Clock::now();
  parallel_for(k * spec.trees, threads, [&](std::size_t task) {
    const std::size_t c = task / spec.trees;
    const std::size_t i = task % spec.trees;
    const auto t0 = Clock::now();
    Hyperparams tree_hp = hp;
    LhtTree tree;
    if (spec.strategy == ForestStrategy::kBetaSweep) {
      tree_hp.beta = static_cast<double>(i) / static_cast<double>(spec.trees);
      tree = train_tree(train.features, labels[c], static_cast<int>(c),
                        tree_hp);
    } else {
      auto bag = draw_bag(labels[c], spec.bag_fraction, spec.seed, c, i);
      if (!bag) {
        throw Error(ErrorCode::kDegenerateBag,
                    "could not draw a bag with both target and non-target "
                    "rows for class '" +
                        train.class_names[c] + "', tree " + std::to_string(i));
      }
      std::vector<std::uint8_t> bag_labels(bag->size());
      for (std::size_t j = 0; j < bag->size(); ++j) {
        bag_labels[j] = labels[c][(*bag)[j]];
      }
      tree = train_tree(train.features.select_rows(*bag), bag_labels,
                        static_cast<int>(c), tree_hp);
    }
    forest.trees[c][i] = std::move(tree);
    tree_ms[c][i] = elapsed_ms(t0);
  });
  if (timing) {
    timing->wall_ms = elapsed_ms(start);
    timing->tree_ms = std::move(tree_ms);
  }
  return forest;
}

double score_forest(const LhForest& forest, std::size_t class_k,
                    std::span<const double> x) {
  const auto& trees = forest.trees.at(class_k);
  double sum = 0.0;
  double lo = 1.0;
  double hi = 0.0;
  for (const LhtTree& tree : trees) {
    const double s = score_tree(tree, x);
    sum += s;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  // The mean lies in [lo, hi]; clamping only removes rounding excursions.
  return std::clamp(sum / static_cast<double>(trees.size()), lo, hi);
}

Prediction predict_forest(const LhForest& forest, std::span<const double> x) {
  Prediction p;
  p.scores.reserve(forest.trees.size());
  for (std::size_t c = 0; c < forest.trees.size(); ++c) {
    p.scores.push_back(score_forest(forest, c, x));
  }
  p.label = argmax_lowest(p.scores);
  return p;
}

}  // namespace lht
