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

#include "model.hpp"

#include <algorithm>

#include "error.hpp"
#include "parallel.hpp"

namespace lht {

const Schema& model_schema(const Model& model) {
  return std::visit([](const auto& m) -> const Schema& { return m.schema; },
                    model);
}

std::vector<std::vector<const LhtTree*>> trees_by_class(const Model& model) {
  std::vector<std::vector<const LhtTree*>> groups;
  if (const auto* single = std::get_if<MulticlassModel>(&model)) {
    for (const LhtTree& tree : single->trees) groups.push_back({&tree});
  } else {
    for (const auto& per_class : std::get<LhForest>(model).trees) {
      auto& group = groups.emplace_back();
      for (const LhtTree& tree : per_class) group.push_back(&tree);
    }
  }
  return groups;
}

Prediction predict(const Model& model, std::span<const double> x) {
  if (const auto* single = std::get_if<MulticlassModel>(&model)) {
    return predict(*single, x);
  }
  return predict_forest(std::get<LhForest>(model), x);
}

EvalReport evaluate(const Model& model, const Dataset& data,
                    unsigned threads) {
  const Schema& schema = model_schema(model);
  check_dimension(data.cols(), schema.feature_names.size(), "evaluate");
  if (!data.labeled()) {
    throw Error(ErrorCode::kInvalidArgument,
                "evaluation requires a labeled dataset");
  }
  std::vector<int> to_model(data.num_classes(), -1);
  for (std::size_t c = 0; c < data.num_classes(); ++c) {
    const auto it = std::find(schema.class_names.begin(),
                              schema.class_names.end(), data.class_names[c]);
    if (it != schema.class_names.end()) {
      to_model[c] = static_cast<int>(it - schema.class_names.begin());
    }
  }

  const auto groups = trees_by_class(model);
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (std::size_t t = 0; t < groups[c].size(); ++t) tasks.emplace_back(c, t);
  }

  const std::size_t n = data.rows();
  std::vector<std::vector<double>> tree_scores(tasks.size(),
                                               std::vector<double>(n));
  std::vector<double> tree_ms(tasks.size(), 0.0);
  const auto start = Clock::now();
  parallel_for(tasks.size(), threads, [&](std::size_t task) {
    const LhtTree& tree = *groups[tasks[task].first][tasks[task].second];
    auto& out = tree_scores[task];
    const auto t0 = Clock::now();
    for (std::size_t r = 0; r < n; ++r) {
      out[r] = score_tree(tree, data.features.row(r));
    }
    tree_ms[task] = elapsed_ms(t0);
  });

  // Combine exactly as score_forest does: sum in tree order, divide, clamp.
  EvalReport report;
  report.rows = n;
  report.predicted.resize(n);
  std::vector<double> scores(groups.size());
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t task = 0;
    for (std::size_t c = 0; c < groups.size(); ++c) {
      const std::size_t t_count = groups[c].size();
      if (!is_forest(model)) {
        scores[c] = tree_scores[task++][r];
        continue;
      }
      double sum = 0.0;
      double lo = 1.0;
      double hi = 0.0;
      for (std::size_t t = 0; t < t_count; ++t) {
        const double s = tree_scores[task++][r];
        sum += s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      scores[c] = std::clamp(sum / static_cast<double>(t_count), lo, hi);
    }
    report.predicted[r] = argmax_lowest(scores);
    if (report.predicted[r] == to_model[data.labels[r]]) ++report.correct;
  }
  report.total_ms = elapsed_ms(start);
  report.max_tree_ms =
      tree_ms.empty() ? 0.0 : *std::max_element(tree_ms.begin(), tree_ms.end());
  report.accuracy = n == 0 ? 0.0
                           : static_cast<double>(report.correct) /
                                 static_cast<double>(n);
  return report;
}

}  // namespace lht
