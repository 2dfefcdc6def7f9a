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

/*
 * C interface to the learning hyperplane tree classifier.
 *
 * All objects are opaque handles created by the library and released with
 * the matching *_free function. Every fallible call returns an lht_status;
 * on failure, lht_last_error() describes the problem. The message is stored
 * per thread and stays valid until the next failing call on that thread.
 *
 * Handles are immutable after creation and may be shared between threads.
 */

#ifndef LHT_LHT_H_
#define LHT_LHT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LHT_BUILDING_LIBRARY)
#    define LHT_API __declspec(dllexport)
#  else
#    define LHT_API __declspec(dllimport)
#  endif
#else
#  define LHT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lht_status {
  LHT_OK = 0,
  LHT_ERR_INVALID_ARGUMENT = 1,
  LHT_ERR_IO = 2,
  LHT_ERR_PARSE = 3,
  LHT_ERR_DIMENSION = 4,
  LHT_ERR_DATA = 5,
  LHT_ERR_DEGENERATE_BAG = 6,
  LHT_ERR_FORMAT = 7,
  LHT_ERR_INTERNAL = 99
} lht_status;

typedef struct lht_dataset lht_dataset;
typedef struct lht_model lht_model;

LHT_API const char* lht_last_error(void);
LHT_API const char* lht_status_string(lht_status status);
LHT_API const char* lht_version(void);

/* ---- datasets ---------------------------------------------------------- */

/* `label_column` is a header name or a zero-based column index. Labels are
 * re-encoded to 0..K-1 in order of first appearance. */
LHT_API lht_status lht_dataset_load_csv(const char* path,
                                        const char* label_column,
                                        int has_header, lht_dataset** out);

/* Unlabeled data: every column is a feature. */
LHT_API lht_status lht_dataset_load_features_csv(const char* path,
                                                 int has_header,
                                                 lht_dataset** out);

/* Writes a labeled dataset with its label in a leading `class` column. */
LHT_API lht_status lht_dataset_write_csv(const lht_dataset* data,
                                         const char* path);

/* The test part gets round(rows * test_fraction) rows. */
LHT_API lht_status lht_dataset_split(const lht_dataset* data,
                                     double test_fraction, uint64_t seed,
                                     lht_dataset** train, lht_dataset** test);

LHT_API void lht_dataset_free(lht_dataset* data);

LHT_API size_t lht_dataset_rows(const lht_dataset* data);
LHT_API size_t lht_dataset_cols(const lht_dataset* data);
/* 0 for unlabeled data. */
LHT_API size_t lht_dataset_num_classes(const lht_dataset* data);
LHT_API const double* lht_dataset_row(const lht_dataset* data, size_t row);
/* -1 for unlabeled data or an out-of-range row. */
LHT_API int lht_dataset_label(const lht_dataset* data, size_t row);
LHT_API const char* lht_dataset_class_name(const lht_dataset* data,
                                           size_t class_id);
LHT_API const char* lht_dataset_feature_name(const lht_dataset* data,
                                             size_t feature);

/* ---- training ---------------------------------------------------------- */

typedef struct lht_hyperparams {
  double alpha;     /* variance filter threshold, >= 0 */
  double beta;      /* weight filter threshold, in [0, 1) */
  size_t gamma;     /* minimum pure-side count, >= 1 */
  size_t min_split; /* blocks with fewer rows become leaves */
  size_t max_depth;
  int keep_branch_membership;
} lht_hyperparams;

/* alpha 0, beta 0, gamma 1, min_split 2, max_depth 64. */
LHT_API void lht_hyperparams_default(lht_hyperparams* hp);

typedef enum lht_strategy {
  LHT_STRATEGY_BETA_SWEEP = 0,
  LHT_STRATEGY_BAGGING = 1
} lht_strategy;

typedef struct lht_forest_spec {
  size_t trees; /* per class */
  lht_strategy strategy;
  double bag_fraction;
  uint64_t seed;
} lht_forest_spec;

/* 1 tree, beta sweep, bag fraction 0.8, seed 42. */
LHT_API void lht_forest_spec_default(lht_forest_spec* spec);

/* One tree per class. `threads` bounds concurrent per-class training; the
 * trained model does not depend on it. */
LHT_API lht_status lht_model_train(const lht_dataset* train,
                                   const lht_hyperparams* hp, unsigned threads,
                                   lht_model** out);

LHT_API lht_status lht_forest_train(const lht_dataset* train,
                                    const lht_hyperparams* hp,
                                    const lht_forest_spec* spec,
                                    unsigned threads, lht_model** out);

LHT_API void lht_model_free(lht_model* model);

/* ---- inspection -------------------------------------------------------- */

LHT_API int lht_model_is_forest(const lht_model* model);
LHT_API size_t lht_model_num_classes(const lht_model* model);
LHT_API size_t lht_model_num_features(const lht_model* model);
LHT_API size_t lht_model_trees_per_class(const lht_model* model);
LHT_API const char* lht_model_class_name(const lht_model* model,
                                         size_t class_id);
LHT_API const char* lht_model_feature_name(const lht_model* model,
                                           size_t feature);

typedef struct lht_tree_info {
  size_t blocks;
  size_t branching;
  size_t leaves;
  size_t depth;
} lht_tree_info;

LHT_API lht_status lht_model_tree_info(const lht_model* model, size_t class_id,
                                       size_t tree, lht_tree_info* out);

typedef struct lht_train_timing {
  double wall_ms;     /* whole training call */
  double max_tree_ms; /* slowest single tree */
  double sum_tree_ms; /* all trees back to back */
} lht_train_timing;

/* Zeroes for models loaded from disk. */
LHT_API lht_status lht_model_train_timing(const lht_model* model,
                                          lht_train_timing* out);

/* ---- prediction -------------------------------------------------------- */

/* `scores` receives lht_model_num_classes() values; may be NULL. */
LHT_API lht_status lht_model_predict(const lht_model* model, const double* x,
                                     size_t n_features, int* predicted,
                                     double* scores);

/* Leaf search for one tree. Up to `capacity` visited block ids are written
 * to `block_ids` (root first, leaf last) and the full path length to
 * `path_length`. `final_d` and `score` may be NULL. */
LHT_API lht_status lht_model_trace(const lht_model* model, const double* x,
                                   size_t n_features, size_t class_id,
                                   size_t tree, int* block_ids,
                                   size_t capacity, size_t* path_length,
                                   double* final_d, double* score);

typedef struct lht_eval_report {
  size_t rows;
  size_t correct;
  double accuracy;
  double total_ms;    /* scoring every row with every tree */
  double max_tree_ms; /* slowest single tree over every row */
} lht_eval_report;

/* Labels are matched to model classes by name. `predicted` receives
 * lht_dataset_rows() class ids; may be NULL. */
LHT_API lht_status lht_model_evaluate(const lht_model* model,
                                      const lht_dataset* data,
                                      unsigned threads, lht_eval_report* out,
                                      int* predicted);

/* ---- persistence and interpretability ---------------------------------- */

LHT_API lht_status lht_model_save(const lht_model* model, const char* path);
LHT_API lht_status lht_model_load(const char* path, lht_model** out);

LHT_API lht_status lht_model_export_dot(const lht_model* model,
                                        const char* path);
LHT_API lht_status lht_model_export_weights_csv(const lht_model* model,
                                                const char* path);

#ifdef __cplusplus
}
#endif

#endif /* LHT_LHT_H_ */
