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

#include "model_io.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace lht {
namespace {

using nlohmann::json;

json hyperparams_to_json(const Hyperparams& hp) {
  return {{"alpha", hp.alpha},
          {"beta", hp.beta},
          {"gamma", hp.gamma},
          {"min_split", hp.min_split},
          {"max_depth", hp.max_depth},
          {"keep_branch_membership", hp.keep_branch_membership}};
}

Hyperparams hyperparams_from_json(const json& j) {
  Hyperparams hp;
  hp.alpha = j.at("alpha").get<double>();
  hp.beta = j.at("beta").get<double>();
  hp.gamma = j.at("gamma").get<std::size_t>();
  hp.min_split = j.at("min_split").get<std::size_t>();
  hp.max_depth = j.at("max_depth").get<std::size_t>();
  hp.keep_branch_membership = j.value("keep_branch_membership", false);
  return hp;
}

json block_to_json(const Block& b) {
  json j = {{"id", b.id},
            {"kind", b.is_leaf() ? "leaf" : "branching"},
            {"depth", b.depth},
            {"n_samples", b.n_samples},
            {"norm", {{"mins", b.norm.mins}, {"maxs", b.norm.maxs}}}};
  if (b.hyperplane) {
    const Hyperplane& h = *b.hyperplane;
    j["hyperplane"] = {{"features", h.features},
                       {"weights", h.weights},
                       {"c", h.c},
                       {"c_source", std::string(to_string(h.c_source))}};
  }
  if (b.membership) {
    const MembershipFn& f = *b.membership;
    j["membership"] = {{"coeffs", f.coeffs},
                       {"feature_means", f.feature_means},
                       {"label_mean", f.label_mean},
                       {"intercept", f.intercept}};
  }
  if (!b.is_leaf()) j["children"] = {b.left, b.right};
  if (b.purity) j["purity"] = static_cast<int>(*b.purity);
  return j;
}

Block block_from_json(const json& j) {
  Block b;
  b.id = j.at("id").get<int>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "leaf") {
    b.kind = BlockKind::kLeaf;
  } else if (kind == "branching") {
    b.kind = BlockKind::kBranching;
  } else {
    throw Error(ErrorCode::kFormat, "unknown block kind '" + kind + "'");
  }
  b.depth = j.at("depth").get<int>();
  b.n_samples = j.at("n_samples").get<std::size_t>();
  b.norm.mins = j.at("norm").at("mins").get<std::vector<double>>();
  b.norm.maxs = j.at("norm").at("maxs").get<std::vector<double>>();
  if (const auto it = j.find("hyperplane"); it != j.end()) {
    Hyperplane h;
    h.features = it->at("features").get<std::vector<std::size_t>>();
    h.weights = it->at("weights").get<std::vector<double>>();
    h.c = it->at("c").get<double>();
    const auto source = it->at("c_source").get<std::string>();
    const auto parsed = parse_constant_source(source);
    if (!parsed) {
      throw Error(ErrorCode::kFormat, "unknown c_source '" + source + "'");
    }
    h.c_source = *parsed;
    b.hyperplane = std::move(h);
  }
  if (const auto it = j.find("membership"); it != j.end()) {
    MembershipFn f;
    f.coeffs = it->at("coeffs").get<std::vector<double>>();
    f.feature_means = it->at("feature_means").get<std::vector<double>>();
    f.label_mean = it->at("label_mean").get<double>();
    f.intercept = it->at("intercept").get<double>();
    b.membership = std::move(f);
  }
  if (const auto it = j.find("children"); it != j.end()) {
    const auto children = it->get<std::vector<int>>();
    if (children.size() != 2) {
      throw Error(ErrorCode::kFormat, "a block must have exactly 2 children");
    }
    b.left = children[0];
    b.right = children[1];
  }
  if (const auto it = j.find("purity"); it != j.end()) {
    const int purity = it->get<int>();
    if (purity != 0 && purity != 1) {
      throw Error(ErrorCode::kFormat, "purity must be 0 or 1");
    }
    b.purity = static_cast<std::uint8_t>(purity);
  }
  return b;
}

json tree_to_json(const LhtTree& tree) {
  json blocks = json::array();
  for (const Block& b : tree.blocks) blocks.push_back(block_to_json(b));
  return {{"target_class", tree.target_class},
          {"root_id", tree.root_id},
          {"hyperparams", hyperparams_to_json(tree.hp)},
          {"blocks", std::move(blocks)}};
}

LhtTree tree_from_json(const json& j, std::size_t num_features) {
  LhtTree tree;
  tree.target_class = j.at("target_class").get<int>();
  tree.root_id = j.at("root_id").get<int>();
  tree.hp = hyperparams_from_json(j.at("hyperparams"));
  for (const json& b : j.at("blocks")) tree.blocks.push_back(block_from_json(b));
  check_structure(tree);
  if (tree.num_features() != num_features) {
    throw Error(ErrorCode::kFormat,
                "tree width does not match the feature list");
  }
  return tree;
}

json model_to_json(const Model& model) {
  const Schema& schema = model_schema(model);
  json j = {{"format_version", kModelFormatVersion},
            {"kind", is_forest(model) ? "lh_forest" : "lht"},
            {"feature_names", schema.feature_names},
            {"class_names", schema.class_names}};
  if (const auto* single = std::get_if<MulticlassModel>(&model)) {
    j["hyperparams"] = hyperparams_to_json(single->hp);
    json trees = json::array();
    for (const LhtTree& tree : single->trees) trees.push_back(tree_to_json(tree));
    j["trees"] = std::move(trees);
    return j;
  }
  const auto& forest = std::get<LhForest>(model);
  j["hyperparams"] = hyperparams_to_json(forest.hp);
  j["forest"] = {{"t", forest.spec.trees},
                 {"strategy", std::string(to_string(forest.spec.strategy))},
                 {"bag_fraction", forest.spec.bag_fraction},
                 {"seed", forest.spec.seed}};
  json trees = json::array();
  for (const auto& per_class : forest.trees) {
    json group = json::array();
    for (const LhtTree& tree : per_class) group.push_back(tree_to_json(tree));
    trees.push_back(std::move(group));
  }
  j["trees"] = std::move(trees);
  return j;
}

void check_targets(const std::vector<LhtTree>& trees, std::size_t k) {
  for (const LhtTree& tree : trees) {
    if (tree.target_class != static_cast<int>(k)) {
      throw Error(ErrorCode::kFormat,
                  "tree target_class does not match its position");
    }
  }
}

Model model_from_json(const json& j) {
  const int version = j.at("format_version").get<int>();
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported model format version " + std::to_string(version));
  }
  Schema schema;
  schema.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  schema.class_names = j.at("class_names").get<std::vector<std::string>>();
  const std::size_t m = schema.feature_names.size();
  const std::size_t k = schema.class_names.size();
  const json& trees = j.at("trees");
  if (trees.size() != k) {
    throw Error(ErrorCode::kFormat, "expected one tree group per class");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "lht") {
    MulticlassModel model;
    model.schema = std::move(schema);
    model.hp = hyperparams_from_json(j.at("hyperparams"));
    for (std::size_t c = 0; c < k; ++c) {
      model.trees.push_back(tree_from_json(trees[c], m));
      check_targets({model.trees.back()}, c);
    }
    return model;
  }
  if (kind != "lh_forest") {
    throw Error(ErrorCode::kFormat, "unknown model kind '" + kind + "'");
  }
  LhForest forest;
  forest.schema = std::move(schema);
  forest.hp = hyperparams_from_json(j.at("hyperparams"));
  const json& header = j.at("forest");
  forest.spec.trees = header.at("t").get<std::size_t>();
  const auto strategy = header.at("strategy").get<std::string>();
  const auto parsed = parse_forest_strategy(strategy);
  if (!parsed) {
    throw Error(ErrorCode::kFormat, "unknown forest strategy '" + strategy + "'");
  }
  forest.spec.strategy = *parsed;
  forest.spec.bag_fraction = header.at("bag_fraction").get<double>();
  forest.spec.seed = header.at("seed").get<std::uint64_t>();
  for (std::size_t c = 0; c < k; ++c) {
    auto& group = forest.trees.emplace_back();
    for (const json& t : trees[c]) group.push_back(tree_from_json(t, m));
    if (group.size() != forest.spec.trees) {
      throw Error(ErrorCode::kFormat, "class tree count does not match t");
    }
    check_targets(group, c);
  }
  return forest;
}

}  // namespace

std::string model_to_string(const Model& model) {
  return model_to_json(model).dump(1);
}

Model model_from_string(const std::string& text) {
  try {
    return model_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("invalid model: ") + e.what());
  }
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << model_to_string(model) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failure on '" + path + "'");
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return model_from_string(text.str());
}

}  // namespace lht
