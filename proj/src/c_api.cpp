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

#include "lht/lht.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "dataset.hpp"
#include "error.hpp"
#include "explain.hpp"
#include "model.hpp"
#include "model_io.hpp"

struct lht_dataset {
  lht::Dataset rep;
};

struct lht_model {
  lht::Model rep;
  lht::TrainTiming timing;
};

namespace {

thread_local std::string last_error;

lht_status fail(lht_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body` and converts any exception into a status code.
template <typename Body>
lht_status guarded(Body&& body) {
  try {
    body();
    return LHT_OK;
  } catch (const lht::Error& e) {
    return fail(static_cast<lht_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LHT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LHT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LHT_ERR_INTERNAL, "unknown error");
  }
}

#define LHT_REQUIRE(cond, what)                             \
  do {                                                      \
    if (!(cond)) return fail(LHT_ERR_INVALID_ARGUMENT, what); \
  } while (0)

lht::Hyperparams to_core(const lht_hyperparams& hp) {
  lht::Hyperparams out;
  out.alpha = hp.alpha;
  out.beta = hp.beta;
  out.gamma = hp.gamma;
  out.min_split = hp.min_split;
  out.max_depth = hp.max_depth;
  out.keep_branch_membership = hp.keep_branch_membership != 0;
  return out;
}

const lht::LhtTree* tree_at(const lht_model* model, std::size_t class_id,
                            std::size_t tree) {
  const auto groups = lht::trees_by_class(model->rep);
  if (class_id >= groups.size() || tree >= groups[class_id].size()) {
    return nullptr;
  }
  return groups[class_id][tree];
}

}  // namespace

extern "C" {

const char* lht_last_error(void) { return last_error.c_str(); }

const char* lht_status_string(lht_status status) {
  switch (status) {
    case LHT_OK: return "ok";
    case LHT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LHT_ERR_IO: return "i/o error";
    case LHT_ERR_PARSE: return "parse error";
    case LHT_ERR_DIMENSION: return "dimension mismatch";
    case LHT_ERR_DATA: return "data error";
    case LHT_ERR_DEGENERATE_BAG: return "degenerate bag";
    case LHT_ERR_FORMAT: return "model format error";
    case LHT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* lht_version(void) { return "1.0.0"; }

lht_status lht_dataset_load_csv(const char* path, const char* label_column,
                                int has_header, lht_dataset** out) {
  LHT_REQUIRE(path && label_column && out, "null argument");
  return guarded([&] {
    auto data = std::make_unique<lht_dataset>();
    data->rep = lht::load_csv(path, label_column, has_header != 0);
    *out = data.release();
  });
}

lht_status lht_dataset_load_features_csv(const char* path, int has_header,
                                         lht_dataset** out) {
  LHT_REQUIRE(path && out, "null argument");
  return guarded([&] {
    auto data = std::make_unique<lht_dataset>();
    data->rep = lht::load_features_csv(path, has_header != 0);
    *out = data.release();
  });
}

lht_status lht_dataset_write_csv(const lht_dataset* data, const char* path) {
  LHT_REQUIRE(data && path, "null argument");
  return guarded([&] { lht::write_csv(data->rep, path); });
}

lht_status lht_dataset_split(const lht_dataset* data, double test_fraction,
                             uint64_t seed, lht_dataset** train,
                             lht_dataset** test) {
  LHT_REQUIRE(data && train && test, "null argument");
  return guarded([&] {
    auto [a, b] = lht::train_test_split(data->rep, test_fraction, seed);
    auto train_out = std::make_unique<lht_dataset>();
    auto test_out = std::make_unique<lht_dataset>();
    train_out->rep = std::move(a);
    test_out->rep = std::move(b);
    *train = train_out.release();
    *test = test_out.release();
  });
}

void lht_dataset_free(lht_dataset* data) { delete data; }

size_t lht_dataset_rows(const lht_dataset* data) {
  return data ? data->rep.rows() : 0;
}

size_t lht_dataset_cols(const lht_dataset* data) {
  return data ? data->rep.cols() : 0;
}

size_t lht_dataset_num_classes(const lht_dataset* data) {
  return data ? data->rep.num_classes() : 0;
}

const double* lht_dataset_row(const lht_dataset* data, size_t row) {
  if (!data || row >= data->rep.rows()) return nullptr;
  return data->rep.features.row(row).data();
}

int lht_dataset_label(const lht_dataset* data, size_t row) {
  if (!data || row >= data->rep.labels.size()) return -1;
  return data->rep.labels[row];
}

const char* lht_dataset_class_name(const lht_dataset* data, size_t class_id) {
  if (!data || class_id >= data->rep.class_names.size()) return nullptr;
  return data->rep.class_names[class_id].c_str();
}

const char* lht_dataset_feature_name(const lht_dataset* data, size_t feature) {
  if (!data || feature >= data->rep.feature_names.size()) return nullptr;
  return data->rep.feature_names[feature].c_str();
}

void lht_hyperparams_default(lht_hyperparams* hp) {
  if (!hp) return;
  const lht::Hyperparams d;
  hp->alpha = d.alpha;
  hp->beta = d.beta;
  hp->gamma = d.gamma;
  hp->min_split = d.min_split;
  hp->max_depth = d.max_depth;
  hp->keep_branch_membership = d.keep_branch_membership ? 1 : 0;
}

void lht_forest_spec_default(lht_forest_spec* spec) {
  if (!spec) return;
  const lht::ForestSpec d;
  spec->trees = d.trees;
  spec->strategy = LHT_STRATEGY_BETA_SWEEP;
  spec->bag_fraction = d.bag_fraction;
  spec->seed = d.seed;
}

lht_status lht_model_train(const lht_dataset* train, const lht_hyperparams* hp,
                           unsigned threads, lht_model** out) {
  LHT_REQUIRE(train && hp && out, "null argument");
  return guarded([&] {
    auto model = std::make_unique<lht_model>();
    model->rep = lht::train_multiclass(train->rep, to_core(*hp), threads,
                                       &model->timing);
    *out = model.release();
  });
}

lht_status lht_forest_train(const lht_dataset* train, const lht_hyperparams* hp,
                            const lht_forest_spec* spec, unsigned threads,
                            lht_model** out) {
  LHT_REQUIRE(train && hp && spec && out, "null argument");
  LHT_REQUIRE(spec->strategy == LHT_STRATEGY_BETA_SWEEP ||
                  spec->strategy == LHT_STRATEGY_BAGGING,
              "unknown forest strategy");
  return guarded([&] {
    lht::ForestSpec core;
    core.trees = spec->trees;
    core.strategy = spec->strategy == LHT_STRATEGY_BAGGING
                        ? lht::ForestStrategy::kBagging
                        : lht::ForestStrategy::kBetaSweep;
    core.bag_fraction = spec->bag_fraction;
    core.seed = spec->seed;
    auto model = std::make_unique<lht_model>();
    model->rep = lht::train_forest(train->rep, to_core(*hp), core, threads,
                                   &model->timing);
    *out = model.release();
  });
}

void lht_model_free(lht_model* model) { delete model; }

int lht_model_is_forest(const lht_model* model) {
  return model && lht::is_forest(model->rep) ? 1 : 0;
}

size_t lht_model_num_classes(const lht_model* model) {
  return model ? lht::model_schema(model->rep).class_names.size() : 0;
}

size_t lht_model_num_features(const lht_model* model) {
  return model ? lht::model_schema(model->rep).feature_names.size() : 0;
}

size_t lht_model_trees_per_class(const lht_model* model) {
  if (!model) return 0;
  if (const auto* forest = std::get_if<lht::LhForest>(&model->rep)) {
    return forest->spec.trees;
  }
  return 1;
}

const char* lht_model_class_name(const lht_model* model, size_t class_id) {
  if (!model) return nullptr;
  const auto& names = lht::model_schema(model->rep).class_names;
  return class_id < names.size() ? names[class_id].c_str() : nullptr;
}

const char* lht_model_feature_name(const lht_model* model, size_t feature) {
  if (!model) return nullptr;
  const auto& names = lht::model_schema(model->rep).feature_names;
  return feature < names.size() ? names[feature].c_str() : nullptr;
}

lht_status lht_model_tree_info(const lht_model* model, size_t class_id,
                               size_t tree, lht_tree_info* out) {
  LHT_REQUIRE(model && out, "null argument");
  const lht::LhtTree* t = tree_at(model, class_id, tree);
  LHT_REQUIRE(t, "class or tree index out of range");
  const lht::TreeShape shape = lht::tree_shape(*t);
  out->blocks = t->blocks.size();
  out->branching = shape.branching;
  out->leaves = shape.leaves;
  out->depth = shape.depth;
  return LHT_OK;
}

lht_status lht_model_train_timing(const lht_model* model,
                                  lht_train_timing* out) {
  LHT_REQUIRE(model && out, "null argument");
  out->wall_ms = model->timing.wall_ms;
  out->max_tree_ms = model->timing.max_tree_ms();
  out->sum_tree_ms = model->timing.sum_tree_ms();
  return LHT_OK;
}

lht_status lht_model_predict(const lht_model* model, const double* x,
                             size_t n_features, int* predicted,
                             double* scores) {
  LHT_REQUIRE(model && x && predicted, "null argument");
  return guarded([&] {
    lht::check_dimension(n_features, lht_model_num_features(model), "predict");
    const lht::Prediction p =
        lht::predict(model->rep, std::span<const double>(x, n_features));
    *predicted = p.label;
    if (scores) std::copy(p.scores.begin(), p.scores.end(), scores);
  });
}

lht_status lht_model_trace(const lht_model* model, const double* x,
                           size_t n_features, size_t class_id, size_t tree,
                           int* block_ids, size_t capacity,
                           size_t* path_length, double* final_d,
                           double* score) {
  LHT_REQUIRE(model && x && path_length, "null argument");
  LHT_REQUIRE(block_ids || capacity == 0, "null block id buffer");
  const lht::LhtTree* t = tree_at(model, class_id, tree);
  LHT_REQUIRE(t, "class or tree index out of range");
  return guarded([&] {
    const lht::PredictionTrace trace =
        lht::find_leaf(*t, std::span<const double>(x, n_features));
    *path_length = trace.path.size();
    for (std::size_t i = 0; i < std::min(capacity, trace.path.size()); ++i) {
      block_ids[i] = trace.path[i].block_id;
    }
    if (final_d) *final_d = trace.final_d;
    if (score) *score = trace.score;
  });
}

lht_status lht_model_evaluate(const lht_model* model, const lht_dataset* data,
                              unsigned threads, lht_eval_report* out,
                              int* predicted) {
  LHT_REQUIRE(model && data && out, "null argument");
  return guarded([&] {
    const lht::EvalReport r = lht::evaluate(model->rep, data->rep, threads);
    out->rows = r.rows;
    out->correct = r.correct;
    out->accuracy = r.accuracy;
    out->total_ms = r.total_ms;
    out->max_tree_ms = r.max_tree_ms;
    if (predicted) std::copy(r.predicted.begin(), r.predicted.end(), predicted);
  });
}

lht_status lht_model_save(const lht_model* model, const char* path) {
  LHT_REQUIRE(model && path, "null argument");
  return guarded([&] { lht::save_model(model->rep, path); });
}

lht_status lht_model_load(const char* path, lht_model** out) {
  LHT_REQUIRE(path && out, "null argument");
  return guarded([&] {
    auto model = std::make_unique<lht_model>();
    model->rep = lht::load_model(path);
    *out = model.release();
  });
}

lht_status lht_model_export_dot(const lht_model* model, const char* path) {
  LHT_REQUIRE(model && path, "null argument");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) {
      throw lht::Error(lht::ErrorCode::kIo,
                       std::string("cannot write '") + path + "'");
    }
    out << lht::export_dot(model->rep);
    if (!out) {
      throw lht::Error(lht::ErrorCode::kIo,
                       std::string("write failure on '") + path + "'");
    }
  });
}

lht_status lht_model_export_weights_csv(const lht_model* model,
                                        const char* path) {
  LHT_REQUIRE(model && path, "null argument");
  return guarded([&] { lht::export_weights_csv(model->rep, path); });
}

}  // extern "C"
