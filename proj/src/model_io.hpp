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

// Model files are JSON documents:
//
//   {"format_version": 1, "kind": "lht" | "lh_forest",
//    "hyperparams": {...}, "feature_names": [...], "class_names": [...],
//    "forest": {"t", "strategy", "bag_fraction", "seed"},    // forests only
//    "trees": [tree, ...]            // lht: one per class
//           | [[tree, ...], ...]}    // lh_forest: t per class
//
//   tree  = {"target_class", "root_id", "hyperparams", "blocks": [block...]}
//   block = {"id", "kind": "branching" | "leaf", "depth", "n_samples",
//            "norm": {"mins", "maxs"},
//            "hyperplane": {"features", "weights", "c", "c_source"},
//            "membership": {"coeffs", "feature_means", "label_mean",
//                           "intercept"},
//            "children": [left, right], "purity": 0 | 1}
//
// Optional block members are omitted when absent. Doubles are written in
// shortest round-trip form, so a reloaded model predicts bit-identically.

#ifndef LHT_MODEL_IO_HPP_
#define LHT_MODEL_IO_HPP_

#include <string>

#include "model.hpp"

namespace lht {

inline constexpr int kModelFormatVersion = 1;

std::string model_to_string(const Model& model);

// Throws Error(kFormat) on malformed or structurally invalid documents.
Model model_from_string(const std::string& text);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace lht

#endif  // LHT_MODEL_IO_HPP_
