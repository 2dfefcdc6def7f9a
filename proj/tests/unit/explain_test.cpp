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

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "explain.hpp"
#include "test_support.hpp"

namespace lht {
namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos;
       p = text.find(needle, p + needle.size())) {
    ++n;
  }
  return n;
}

MulticlassModel wine_model() {
  const Dataset wine =
      load_csv(testing::data_file("wine.csv").string(), "class", true);
  return train_multiclass(wine, {});
}

TEST_CASE("one explanation per branching block, weights sorted by size") {
  const MulticlassModel m = wine_model();
  const auto ex = explain_model(m);
  std::size_t branching = 0;
  for (const auto& t : m.trees) branching += tree_shape(t).branching;
  CHECK(ex.size() == branching);
  for (const auto& e : ex) {
    REQUIRE(e.weights.size() == 13);
    CHECK(std::abs(e.weights.front().weight) == 1.0);
    for (std::size_t k = 1; k < e.weights.size(); ++k) {
      CHECK(std::abs(e.weights[k - 1].weight) >= std::abs(e.weights[k].weight));
      CHECK(std::abs(e.weights[k].weight) <= 1.0);
    }
    const Block& b = m.trees[e.target_class].blocks[e.block_id];
    CHECK(e.c == b.hyperplane->c);
    CHECK(e.n_samples == b.n_samples);
  }
}

TEST_CASE("a tree whose root is a leaf has nothing to explain") {
  MulticlassModel m;
  m.schema = {{"x"}, {"a", "b"}};
  for (int c = 0; c < 2; ++c) {
    LhtTree t;
    t.target_class = c;
    Block b;
    b.norm = {{0}, {1}};
    b.membership = MembershipFn{{0}, {0}, 0.5, 0.5};
    t.blocks = {b};
    m.trees.push_back(t);
  }
  CHECK(explain_model(m).empty());
  const std::string dot = export_dot(m);
  CHECK(count(dot, "digraph") == 2);
  CHECK(count(dot, "shape=box") == 0);
  CHECK(count(dot, "mean p=0.5") == 2);
}

TEST_CASE("a depth-1 tree renders as three nodes and two edges") {
  const Dataset d = testing::make_dataset({{0.9}, {1.0}, {0.0}, {0.1}},
                                          {1, 1, 0, 0}, 2);
  const MulticlassModel m = train_multiclass(d, {});
  const std::string dot = export_dot(m);
  CHECK(count(dot, "digraph") == 2);
  CHECK(count(dot, "shape=box") == 2);
  CHECK(count(dot, "shape=ellipse") == 4);
  CHECK(count(dot, "->") == 4);
  CHECK(dot.find("class_0 (c0)") != std::string::npos);
}

TEST_CASE("the wine model exports three digraphs matching its structure") {
  const MulticlassModel m = wine_model();
  const std::string dot = export_dot(m);
  CHECK(count(dot, "digraph") == 3);
  std::size_t branching = 0;
  for (const auto& t : m.trees) branching += tree_shape(t).branching;
  CHECK(count(dot, "shape=box") == branching);
  CHECK(export_dot(m) == dot);
}

TEST_CASE("user strings are escaped in DOT labels") {
  Dataset d = testing::make_dataset({{0.9}, {1.0}, {0.0}, {0.1}},
                                    {1, 1, 0, 0}, 2);
  d.feature_names = {"say \"hi\""};
  d.class_names = {"back\\slash", "b"};
  const std::string dot = export_dot(train_multiclass(d, {}));
  CHECK(dot.find("say \\\"hi\\\"") != std::string::npos);
  CHECK(dot.find("back\\\\slash") != std::string::npos);
}

TEST_CASE("the weights CSV lists every feature of every branching block") {
  const MulticlassModel m = wine_model();
  std::ostringstream out;
  write_weights_csv(m, out);
  const std::string csv = out.str();
  CHECK(csv.rfind("class,block_id,feature,weight\n", 0) == 0);
  CHECK(count(csv, "class,block_id") == 1);
  std::size_t branching = 0;
  for (const auto& t : m.trees) branching += tree_shape(t).branching;
  CHECK(count(csv, "\n") == 1 + 13 * branching);

  // Re-importing reproduces the stored weights exactly.
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::size_t> feature_index;
  for (std::size_t j = 0; j < m.schema.feature_names.size(); ++j) {
    feature_index[m.schema.feature_names[j]] = j;
  }
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string cls, block, feature, weight;
    std::getline(fields, cls, ',');
    std::getline(fields, block, ',');
    std::getline(fields, feature, ',');
    std::getline(fields, weight, ',');
    const int k = std::stoi(cls) - 1;  // wine classes are named 1, 2, 3
    const Hyperplane& h = *m.trees[k].blocks[std::stoi(block)].hyperplane;
    double w = 0.0;
    std::from_chars(weight.data(), weight.data() + weight.size(), w);
    double stored = 0.0;
    for (std::size_t p = 0; p < h.features.size(); ++p) {
      if (h.features[p] == feature_index.at(feature)) stored = h.weights[p];
    }
    CHECK(w == stored);
    ++checked;
  }
  CHECK(checked == 13 * branching);
}

TEST_CASE("forest weight exports carry a tree column") {
  const Dataset d = testing::gaussian_blobs(60, 3, 2, 0.8, 1);
  ForestSpec spec;
  spec.trees = 2;
  const Model f = train_forest(d, {}, spec);
  std::ostringstream out;
  write_weights_csv(f, out);
  CHECK(out.str().rfind("class,tree,block_id,feature,weight\n", 0) == 0);
  CHECK(export_dot(f).find(" tree 1") != std::string::npos);
}

}  // namespace
}  // namespace lht
