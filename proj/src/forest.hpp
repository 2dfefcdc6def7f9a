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

// Ensembles of t trees per class whose corrected scores are averaged.
//
// Two ways of making the trees differ: a beta sweep (tree i filters features
// with beta = i / t on the full training set) and row bagging (each tree sees
// ceil(bag_fraction * n) rows drawn with replacement).

#ifndef LHT_FOREST_HPP_
#define LHT_FOREST_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tree.hpp"

namespace lht {

enum class ForestStrategy { kBetaSweep, kBagging };

std::string_view to_string(ForestStrategy strategy);
std::optional<ForestStrategy> parse_forest_strategy(std::string_view name);

struct ForestSpec {
  std::size_t trees = 1;
  ForestStrategy strategy = ForestStrategy::kBetaSweep;
  double bag_fraction = 0.8;
  std::uint64_t seed = 42;

  friend bool operator==(const ForestSpec&, const ForestSpec&) = default;
};

void validate(const ForestSpec& spec);

struct LhForest {
  Schema schema;
  Hyperparams hp;  // base hyperparameters; beta is overridden per tree in
                   // a beta sweep
  ForestSpec spec;
  std::vector<std::vector<LhtTree>> trees;  // [class][tree]

  friend bool operator==(const LhForest&, const LhForest&) = default;
};

// Bootstrap bag for (class, tree); retried with a new stream until both
// binary labels are present. nullopt after 16 failed attempts.
std::optional<std::vector<std::size_t>> draw_bag(
    std::span<const std::uint8_t> labels, double bag_fraction,
    std::uint64_t seed, std::size_t target_class, std::size_t tree_index);

// Throws Error(kDegenerateBag) when bagging cannot produce a usable bag.
LhForest train_forest(const Dataset& train, const Hyperparams& hp,
                      const ForestSpec& spec, unsigned threads = 1,
                      TrainTiming* timing = nullptr);

// Mean of the class's per-tree corrected scores.
double score_forest(const LhForest& forest, std::size_t class_k,
                    std::span<const double> x);

Prediction predict_forest(const LhForest& forest, std::span<const double> x);

}  // namespace lht

#endif  // LHT_FOREST_HPP_
