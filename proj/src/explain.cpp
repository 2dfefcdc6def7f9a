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

#include "explain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "format.hpp"

namespace lht {
namespace {

constexpr std::size_t kDotTopFeatures = 3;

std::vector<double> dense_weights(const Hyperplane& h, std::size_t m) {
  std::vector<double> w(m, 0.0);
  for (std::size_t k = 0; k < h.features.size(); ++k) {
    w[h.features[k]] = h.weights[k];
  }
  return w;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  return out + "\"";
}

std::string graph_name(const Schema& schema, const LhtTree& tree,
                       std::size_t tree_index, bool forest) {
  std::string name = "class_" + std::to_string(tree.target_class) + " (" +
                     schema.class_names[tree.target_class] + ")";
  if (forest) name += " tree " + std::to_string(tree_index);
  return name;
}

std::string leaf_label(const Block& b) {
  std::string label = "leaf " + std::to_string(b.id) +
                      "\\nn=" + std::to_string(b.n_samples) + "\\n";
  if (b.purity) {
    label += *b.purity ? "pure target" : "pure non-target";
  } else {
    label += "mean p=" + format_general(b.membership->label_mean, 4);
  }
  return label;
}

}  // namespace

std::vector<BlockExplanation> explain_model(const Model& model) {
  const Schema& schema = model_schema(model);
  const std::size_t m = schema.feature_names.size();
  std::vector<BlockExplanation> out;
  const auto groups = trees_by_class(model);
  for (const auto& group : groups) {
    for (std::size_t t = 0; t < group.size(); ++t) {
      const LhtTree& tree = *group[t];
      for (const Block& b : tree.blocks) {
        if (b.is_leaf()) continue;
        BlockExplanation e;
        e.target_class = tree.target_class;
        e.class_name = schema.class_names[tree.target_class];
        e.tree_index = t;
        e.block_id = b.id;
        e.c = b.hyperplane->c;
        e.c_source = b.hyperplane->c_source;
        e.n_samples = b.n_samples;
        e.left_kind = tree.blocks[b.left].kind;
        e.right_kind = tree.blocks[b.right].kind;
        const auto w = dense_weights(*b.hyperplane, m);
        for (std::size_t i = 0; i < m; ++i) {
          e.weights.push_back({i, schema.feature_names[i], w[i]});
        }
        std::stable_sort(e.weights.begin(), e.weights.end(),
                         [](const FeatureWeight& a, const FeatureWeight& b) {
                           return std::abs(a.weight) > std::abs(b.weight);
                         });
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::string export_dot(const Model& model) {
  const Schema& schema = model_schema(model);
  const bool forest = is_forest(model);
  const auto explanations = explain_model(model);
  std::ostringstream dot;
  std::size_t next_explanation = 0;
  for (const auto& group : trees_by_class(model)) {
    for (std::size_t t = 0; t < group.size(); ++t) {
      const LhtTree& tree = *group[t];
      dot << "digraph \"" << dot_escape(graph_name(schema, tree, t, forest))
          << "\" {\n"
          << "  node [fontname=\"Helvetica\"];\n";
      for (const Block& b : tree.blocks) {
        if (b.is_leaf()) {
          dot << "  b" << b.id << " [shape=ellipse, label=\""
              << leaf_label(b) << "\"];\n";
          continue;
        }
        const BlockExplanation& e = explanations[next_explanation++];
        std::string label = "block " + std::to_string(b.id) +
                            "\\nn=" + std::to_string(b.n_samples) + "\\n" +
                            std::string(to_string(e.c_source)) +
                            " c=" + format_general(e.c, 4);
        for (std::size_t k = 0; k < std::min(kDotTopFeatures, e.weights.size());
             ++k) {
          if (e.weights[k].weight == 0.0) break;
          label += "\\n" + dot_escape(e.weights[k].name) + ": " +
                   format_general(e.weights[k].weight, 4);
        }
        dot << "  b" << b.id << " [shape=box, label=\"" << label << "\"];\n";
        dot << "  b" << b.id << " -> b" << b.left << " [label=\"y<0\"];\n";
        dot << "  b" << b.id << " -> b" << b.right << " [label=\"y>=0\"];\n";
      }
      dot << "}\n";
    }
  }
  return dot.str();
}

void write_weights_csv(const Model& model, std::ostream& out) {
  const Schema& schema = model_schema(model);
  const bool forest = is_forest(model);
  const std::size_t m = schema.feature_names.size();
  out << (forest ? "class,tree,block_id,feature,weight\n"
                 : "class,block_id,feature,weight\n");
  for (const auto& group : trees_by_class(model)) {
    for (std::size_t t = 0; t < group.size(); ++t) {
      const LhtTree& tree = *group[t];
      const std::string cls = csv_field(schema.class_names[tree.target_class]);
      for (const Block& b : tree.blocks) {
        if (b.is_leaf()) continue;
        const auto w = dense_weights(*b.hyperplane, m);
        for (std::size_t i = 0; i < m; ++i) {
          out << cls << ',';
          if (forest) out << t << ',';
          out << b.id << ',' << csv_field(schema.feature_names[i]) << ','
              << format_exact(w[i]) << '\n';
        }
      }
    }
  }
}

void export_weights_csv(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  write_weights_csv(model, out);
  if (!out) throw Error(ErrorCode::kIo, "write failure on '" + path + "'");
}

}  // namespace lht
