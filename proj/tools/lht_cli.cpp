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

// `lht` command-line tool: train, predict, bench and explain.
//
// Exit codes: 0 success, 2 usage or configuration error, 1 runtime error.
// Built on the public C interface only.

#include <lht/lht.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Library failures surface as this exception and map to exit code 1.
struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(lht_status status, const std::string& what) {
  if (status != LHT_OK) {
    throw RuntimeFailure(what + ": " + lht_last_error());
  }
}

struct DatasetDeleter {
  void operator()(lht_dataset* d) const { lht_dataset_free(d); }
};
struct ModelDeleter {
  void operator()(lht_model* m) const { lht_model_free(m); }
};
using DatasetPtr = std::unique_ptr<lht_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<lht_model, ModelDeleter>;

DatasetPtr load_labeled(const std::string& path, const std::string& label) {
  lht_dataset* d = nullptr;
  check(lht_dataset_load_csv(path.c_str(), label.c_str(), 1, &d),
        "loading " + path);
  return DatasetPtr(d);
}

DatasetPtr load_unlabeled(const std::string& path) {
  lht_dataset* d = nullptr;
  check(lht_dataset_load_features_csv(path.c_str(), 1, &d), "loading " + path);
  return DatasetPtr(d);
}

ModelPtr load_model(const std::string& path) {
  lht_model* m = nullptr;
  check(lht_model_load(path.c_str(), &m), "loading model " + path);
  return ModelPtr(m);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Round-trip representation for scores in prediction files.
std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
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

// ---- configuration -------------------------------------------------------

struct ModelOptions {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t gamma = 1;
  std::size_t min_split = 2;
  std::size_t max_depth = 64;
  std::size_t trees = 1;
  std::string strategy = "beta-sweep";
  double bag_fraction = 0.8;
  // A forest is trained when t > 1 or a strategy is named explicitly.
  bool forest_requested = false;

  lht_hyperparams hyperparams() const {
    lht_hyperparams hp;
    lht_hyperparams_default(&hp);
    hp.alpha = alpha;
    hp.beta = beta;
    hp.gamma = gamma;
    hp.min_split = min_split;
    hp.max_depth = max_depth;
    return hp;
  }

  bool forest() const { return trees > 1 || forest_requested; }

  lht_forest_spec forest_spec(std::uint64_t seed) const {
    lht_forest_spec spec;
    lht_forest_spec_default(&spec);
    spec.trees = trees;
    spec.strategy = strategy == "bagging" ? LHT_STRATEGY_BAGGING
                                          : LHT_STRATEGY_BETA_SWEEP;
    spec.bag_fraction = bag_fraction;
    spec.seed = seed;
    return spec;
  }
};

// [0, 1) when `closed_below`, otherwise (0, 1].
CLI::Validator half_open(const std::string& message, bool closed_below) {
  return CLI::Validator(
      [=](const std::string& s) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v)) return message;
        const bool ok = closed_below ? (v >= 0.0 && v < 1.0)
                                     : (v > 0.0 && v <= 1.0);
        return ok ? "" : message;
      },
      closed_below ? "[0,1)" : "(0,1]");
}

CLI::Option* add_model_options(CLI::App* cmd, ModelOptions& o) {
  cmd->add_option("--alpha", o.alpha, "Variance filter threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--beta", o.beta, "Weight filter threshold in [0, 1)")
      ->check(half_open("beta must lie in [0, 1)", true))
      ->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Minimum pure-side count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--min-split", o.min_split,
                  "Blocks with fewer rows become leaves")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-depth", o.max_depth, "Maximum block depth")
      ->capture_default_str();
  cmd->add_option("--trees", o.trees, "Trees per class (forest when > 1)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--bag-fraction", o.bag_fraction,
                  "Bag size as a fraction of the training rows")
      ->check(half_open("bag fraction must lie in (0, 1]", false))
      ->capture_default_str();
  return cmd->add_option("--strategy", o.strategy, "Forest diversity strategy")
      ->check(CLI::IsMember({"beta-sweep", "bagging"}))
      ->capture_default_str();
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

ModelPtr train_model(const lht_dataset* train, const ModelOptions& o,
                     std::uint64_t seed, unsigned threads) {
  const lht_hyperparams hp = o.hyperparams();
  lht_model* m = nullptr;
  if (o.forest()) {
    const lht_forest_spec spec = o.forest_spec(seed);
    check(lht_forest_train(train, &hp, &spec, threads, &m), "training");
  } else {
    check(lht_model_train(train, &hp, threads, &m), "training");
  }
  return ModelPtr(m);
}

struct Split {
  DatasetPtr train;
  DatasetPtr test;
};

Split split_dataset(const lht_dataset* data, double fraction,
                    std::uint64_t seed) {
  lht_dataset* train = nullptr;
  lht_dataset* test = nullptr;
  check(lht_dataset_split(data, fraction, seed, &train, &test), "splitting");
  return {DatasetPtr(train), DatasetPtr(test)};
}

lht_eval_report evaluate(const lht_model* model, const lht_dataset* data,
                         unsigned threads) {
  lht_eval_report r;
  check(lht_model_evaluate(model, data, threads, &r, nullptr), "evaluating");
  return r;
}

// ---- train ---------------------------------------------------------------

struct TrainOptions {
  std::string data;
  std::string label = "0";
  ModelOptions model;
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  std::string model_path = "model.json";
  std::string export_split;
  unsigned threads = 0;
};

void print_tree_sizes(const lht_model* model) {
  const std::size_t k = lht_model_num_classes(model);
  const std::size_t t = lht_model_trees_per_class(model);
  std::printf("%-6s %-16s %5s %7s %9s %7s %6s\n", "class", "name", "tree",
              "blocks", "branching", "leaves", "depth");
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < t; ++i) {
      lht_tree_info info;
      check(lht_model_tree_info(model, c, i, &info), "inspecting model");
      std::printf("%-6zu %-16s %5zu %7zu %9zu %7zu %6zu\n", c,
                  lht_model_class_name(model, c), i, info.blocks,
                  info.branching, info.leaves, info.depth);
    }
  }
}

int cmd_train(const TrainOptions& o) {
  const unsigned threads = resolve_threads(o.threads);
  DatasetPtr data = load_labeled(o.data, o.label);
  Split split = split_dataset(data.get(), o.test_fraction, o.seed);
  if (!o.export_split.empty()) {
    check(lht_dataset_write_csv(split.train.get(),
                                (o.export_split + ".train.csv").c_str()),
          "writing split");
    check(lht_dataset_write_csv(split.test.get(),
                                (o.export_split + ".test.csv").c_str()),
          "writing split");
  }
  ModelPtr model = train_model(split.train.get(), o.model, o.seed, threads);
  lht_train_timing timing;
  check(lht_model_train_timing(model.get(), &timing), "timing");
  const lht_eval_report train_r = evaluate(model.get(), split.train.get(), 1);
  const lht_eval_report test_r = evaluate(model.get(), split.test.get(), 1);
  check(lht_model_save(model.get(), o.model_path.c_str()), "saving model");

  std::printf("data: %s (%zu rows, %zu features, %zu classes)\n",
              o.data.c_str(), lht_dataset_rows(data.get()),
              lht_dataset_cols(data.get()), lht_dataset_num_classes(data.get()));
  std::printf("split: %zu train / %zu test, seed %llu\n", train_r.rows,
              test_r.rows, static_cast<unsigned long long>(o.seed));
  if (lht_model_is_forest(model.get())) {
    std::printf("model: forest, %zu trees per class, %s\n", o.model.trees,
                o.model.strategy.c_str());
  } else {
    std::printf("model: one tree per class\n");
  }
  std::printf("train accuracy: %s (%zu/%zu)\n",
              fixed(100.0 * train_r.accuracy, 2).c_str(), train_r.correct,
              train_r.rows);
  std::printf("test accuracy: %s (%zu/%zu)\n",
              fixed(100.0 * test_r.accuracy, 2).c_str(), test_r.correct,
              test_r.rows);
  std::printf("train time: %s ms wall, %s ms slowest tree (%u thread%s)\n",
              fixed(timing.wall_ms, 3).c_str(),
              fixed(timing.max_tree_ms, 3).c_str(), threads,
              threads == 1 ? "" : "s");
  std::printf("test time: %s ms total, %s us per sample\n",
              fixed(test_r.total_ms, 3).c_str(),
              fixed(test_r.rows ? 1000.0 * test_r.total_ms / test_r.rows : 0.0,
                    3)
                  .c_str());
  print_tree_sizes(model.get());
  std::printf("model written to %s\n", o.model_path.c_str());
  return 0;
}

// ---- predict -------------------------------------------------------------

struct PredictOptions {
  std::string model_path;
  std::string data;
  std::string label;  // optional: when set, accuracy is reported
  std::string out;
  bool trace = false;
  unsigned threads = 0;
};

std::string join_ids(const std::vector<int>& ids, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ';';
    s += std::to_string(ids[i]);
  }
  return s;
}

int cmd_predict(const PredictOptions& o) {
  ModelPtr model = load_model(o.model_path);
  const lht_model* m = model.get();
  DatasetPtr data =
      o.label.empty() ? load_unlabeled(o.data) : load_labeled(o.data, o.label);
  const std::size_t features = lht_model_num_features(m);
  if (lht_dataset_cols(data.get()) != features) {
    throw RuntimeFailure("schema mismatch: model expects " +
                         std::to_string(features) + " feature columns, " +
                         o.data + " has " +
                         std::to_string(lht_dataset_cols(data.get())));
  }
  const std::size_t k = lht_model_num_classes(m);
  const std::size_t t = lht_model_trees_per_class(m);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw RuntimeFailure("cannot write " + o.out);
  }
  std::ostream& out = o.out.empty() ? std::cout : file;

  out << "row,predicted";
  for (std::size_t c = 0; c < k; ++c) {
    out << ',' << csv_field("score_" + std::string(lht_model_class_name(m, c)));
  }
  if (o.trace) {
    for (std::size_t c = 0; c < k; ++c) {
      const std::string name = lht_model_class_name(m, c);
      out << ',' << csv_field("blocks_" + name) << ','
          << csv_field("d_" + name);
    }
  }
  out << '\n';

  const std::size_t rows = lht_dataset_rows(data.get());
  std::vector<double> scores(k);
  std::vector<int> predicted(rows);
  std::vector<int> path(64);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = lht_dataset_row(data.get(), r);
    check(lht_model_predict(m, x, features, &predicted[r], scores.data()),
          "predicting");
    out << r << ',' << csv_field(lht_model_class_name(m, predicted[r]));
    for (double s : scores) out << ',' << exact(s);
    if (o.trace) {
      // Forest trees of one class are separated by '|'.
      for (std::size_t c = 0; c < k; ++c) {
        std::string blocks;
        std::string ds;
        for (std::size_t i = 0; i < t; ++i) {
          std::size_t length = 0;
          double d = 0.0;
          for (;;) {
            check(lht_model_trace(m, x, features, c, i, path.data(),
                                  path.size(), &length, &d, nullptr),
                  "tracing");
            if (length <= path.size()) break;
            path.resize(length);
          }
          if (i) {
            blocks += '|';
            ds += '|';
          }
          blocks += join_ids(path, length);
          ds += exact(d);
        }
        out << ',' << blocks << ',' << ds;
      }
    }
    out << '\n';
  }
  if (!out) throw RuntimeFailure("write failure");

  if (!o.label.empty()) {
    const lht_eval_report r = evaluate(m, data.get(), resolve_threads(o.threads));
    std::fprintf(o.out.empty() ? stderr : stdout, "accuracy: %s (%zu/%zu)\n",
                 fixed(100.0 * r.accuracy, 2).c_str(), r.correct, r.rows);
  }
  return 0;
}

// ---- bench ---------------------------------------------------------------

struct BenchOptions {
  std::vector<std::string> data;
  std::vector<std::string> labels;
  ModelOptions model;
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  std::size_t repeats = 5;
  std::string out;
  unsigned threads = 0;
};

struct Stat {
  std::vector<double> values;
  void add(double v) { values.push_back(v); }
  double mean() const {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  }
  // Sample standard deviation; 0 for a single value.
  double stddev() const {
    if (values.size() < 2) return 0.0;
    const double mu = mean();
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  std::string show(int digits) const {
    return fixed(mean(), digits) + " ± " + fixed(stddev(), digits);
  }
};

struct BenchRow {
  std::string dataset;
  std::string error;
  std::size_t rows = 0;
  std::size_t features = 0;
  std::size_t classes = 0;
  Stat train_acc, test_acc;
  Stat train_ms_single, train_ms_parallel, train_max_tree_ms;
  Stat test_ms, test_us_per_sample, test_max_tree_ms;
};

BenchRow bench_dataset(const BenchOptions& o, const std::string& path,
                       const std::string& label, unsigned threads) {
  BenchRow row;
  row.dataset = path;
  try {
    DatasetPtr data = load_labeled(path, label);
    row.rows = lht_dataset_rows(data.get());
    row.features = lht_dataset_cols(data.get());
    row.classes = lht_dataset_num_classes(data.get());
    for (std::size_t r = 0; r < o.repeats; ++r) {
      const std::uint64_t seed = o.seed + r;
      Split split = split_dataset(data.get(), o.test_fraction, seed);
      // Single-worker run: the reported model.
      ModelPtr model = train_model(split.train.get(), o.model, seed, 1);
      lht_train_timing single;
      check(lht_model_train_timing(model.get(), &single), "timing");
      // Parallel run: timing only; the model is identical by construction.
      ModelPtr parallel = train_model(split.train.get(), o.model, seed, threads);
      lht_train_timing par;
      check(lht_model_train_timing(parallel.get(), &par), "timing");

      const lht_eval_report tr = evaluate(model.get(), split.train.get(), 1);
      const lht_eval_report te = evaluate(model.get(), split.test.get(), 1);
      row.train_acc.add(100.0 * tr.accuracy);
      row.test_acc.add(100.0 * te.accuracy);
      row.train_ms_single.add(single.wall_ms);
      row.train_ms_parallel.add(par.wall_ms);
      row.train_max_tree_ms.add(single.max_tree_ms);
      row.test_ms.add(te.total_ms);
      row.test_us_per_sample.add(1000.0 * te.total_ms /
                                 static_cast<double>(te.rows));
      row.test_max_tree_ms.add(te.max_tree_ms);
    }
  } catch (const RuntimeFailure& e) {
    row.error = e.what();
  }
  return row;
}

void write_bench_tsv(std::ostream& out, const std::vector<BenchRow>& rows,
                     unsigned threads) {
  out << "dataset\tstatus\trows\tfeatures\tclasses\trepeats"
         "\ttrain_acc_mean\ttrain_acc_std\ttest_acc_mean\ttest_acc_std"
         "\ttrain_ms_single_mean\ttrain_ms_single_std"
         "\ttrain_ms_parallel_mean\ttrain_ms_parallel_std\tparallel_threads"
         "\ttrain_max_tree_ms_mean\ttest_ms_mean\ttest_ms_std"
         "\ttest_us_per_sample_mean\ttest_max_tree_ms_mean\n";
  for (const BenchRow& r : rows) {
    out << r.dataset << '\t';
    if (!r.error.empty()) {
      out << "error: " << r.error << '\n';
      continue;
    }
    auto pair = [&](const Stat& s) {
      out << '\t' << exact(s.mean()) << '\t' << exact(s.stddev());
    };
    out << "ok\t" << r.rows << '\t' << r.features << '\t' << r.classes << '\t'
        << r.test_acc.values.size();
    pair(r.train_acc);
    pair(r.test_acc);
    pair(r.train_ms_single);
    pair(r.train_ms_parallel);
    out << '\t' << threads;
    out << '\t' << exact(r.train_max_tree_ms.mean());
    pair(r.test_ms);
    out << '\t' << exact(r.test_us_per_sample.mean()) << '\t'
        << exact(r.test_max_tree_ms.mean()) << '\n';
  }
}

void print_bench_table(const std::vector<BenchRow>& rows, bool forest,
                       unsigned threads) {
  std::printf("%-24s %6s %4s %3s  %-16s %-16s %-18s %-18s %-18s %-14s\n",
              "dataset", "rows", "m", "K", "train acc %", "test acc %",
              "train ms (1 thr)", "train ms (par)",
              forest ? "max tree train ms" : "slowest tree ms", "test us/row");
  for (const BenchRow& r : rows) {
    std::string name = r.dataset;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos) {
      name = name.substr(slash + 1);
    }
    if (!r.error.empty()) {
      std::printf("%-24s FAILED: %s\n", name.c_str(), r.error.c_str());
      continue;
    }
    std::printf("%-24s %6zu %4zu %3zu  %-16s %-16s %-18s %-18s %-18s %-14s\n",
                name.c_str(), r.rows, r.features, r.classes,
                r.train_acc.show(2).c_str(), r.test_acc.show(2).c_str(),
                r.train_ms_single.show(2).c_str(),
                r.train_ms_parallel.show(2).c_str(),
                r.train_max_tree_ms.show(2).c_str(),
                r.test_us_per_sample.show(3).c_str());
  }
  std::printf("parallel mode uses %u threads; ± is the sample stddev over "
              "repeats\n",
              threads);
}

int cmd_bench(const BenchOptions& o) {
  if (!o.labels.empty() && o.labels.size() != 1 &&
      o.labels.size() != o.data.size()) {
    throw CLI::ValidationError("--label",
                               "give one label for all datasets or one each");
  }
  const unsigned threads = resolve_threads(o.threads);
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < o.data.size(); ++i) {
    const std::string label = o.labels.empty()       ? std::string("0")
                              : o.labels.size() == 1 ? o.labels[0]
                                                     : o.labels[i];
    rows.push_back(bench_dataset(o, o.data[i], label, threads));
    std::fflush(stdout);
  }
  print_bench_table(rows, o.model.forest(), threads);
  if (o.out.empty()) {
    std::printf("\n");
    write_bench_tsv(std::cout, rows, threads);
  } else {
    std::ofstream file(o.out);
    write_bench_tsv(file, rows, threads);
    if (!file) throw RuntimeFailure("cannot write " + o.out);
  }
  const bool failed = std::any_of(rows.begin(), rows.end(),
                                  [](const BenchRow& r) { return !r.error.empty(); });
  return failed ? kExitRuntime : 0;
}

// ---- explain -------------------------------------------------------------

struct ExplainOptions {
  std::string model_path;
  std::string out;
};

int cmd_explain(const ExplainOptions& o) {
  ModelPtr model = load_model(o.model_path);
  std::string base = o.out;
  if (base.empty()) {
    base = o.model_path;
    const std::string ext = ".json";
    if (base.size() > ext.size() &&
        base.compare(base.size() - ext.size(), ext.size(), ext) == 0) {
      base.resize(base.size() - ext.size());
    }
  }
  const std::string dot = base + ".dot";
  const std::string weights = base + ".weights.csv";
  check(lht_model_export_dot(model.get(), dot.c_str()), "writing " + dot);
  check(lht_model_export_weights_csv(model.get(), weights.c_str()),
        "writing " + weights);
  std::printf("wrote %s\nwrote %s\n", dot.c_str(), weights.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning hyperplane tree classifier"};
  app.set_version_flag("--version", std::string(lht_version()));
  app.set_config("--config", "", "TOML/INI file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();  // lets `--config` follow the subcommand

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Split, train, report, save");
  train_cmd->add_option("--data", train.data, "Labeled CSV with a header")
      ->required();
  train_cmd->add_option("--label", train.label, "Label column name or index")
      ->capture_default_str();
  auto* train_strategy = add_model_options(train_cmd, train.model);
  train_cmd->add_option("--test-fraction", train.test_fraction,
                         "Share of rows held out for testing")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Seed for the split and for bagging")
      ->capture_default_str();
  train_cmd->add_option("--model", train.model_path, "Model JSON output")
      ->capture_default_str();
  train_cmd->add_option("--export-split", train.export_split,
                        "Write PREFIX.train.csv and PREFIX.test.csv");
  train_cmd->add_option("--threads", train.threads, "0 = all cores");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Score a CSV with a model");
  predict_cmd->add_option("--model", predict.model_path, "Model JSON")
      ->required();
  predict_cmd->add_option("--data", predict.data, "CSV with a header")
      ->required();
  predict_cmd->add_option("--label", predict.label,
                          "Label column; enables accuracy reporting");
  predict_cmd->add_option("--out", predict.out, "Predictions CSV (default stdout)");
  predict_cmd->add_flag("--trace", predict.trace,
                        "Add visited block ids and final d per class");
  predict_cmd->add_option("--threads", predict.threads, "0 = all cores");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Repeated split/train/test timing");
  bench_cmd->add_option("--data", bench.data, "Labeled CSV (repeatable)")
      ->required();
  bench_cmd->add_option("--label", bench.labels,
                        "One label for all datasets or one per --data");
  auto* bench_strategy = add_model_options(bench_cmd, bench.model);
  bench_cmd->add_option("--test-fraction", bench.test_fraction,
                         "Share of rows held out for testing")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed of the first repeat")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Splits per dataset")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "TSV output (default stdout)");
  bench_cmd->add_option("--threads", bench.threads,
                        "Workers for the parallel mode; 0 = all cores");

  ExplainOptions explain;
  auto* explain_cmd =
      app.add_subcommand("explain", "Export DOT graphs and a weights CSV");
  explain_cmd->add_option("--model", explain.model_path, "Model JSON")
      ->required();
  explain_cmd->add_option("--out", explain.out,
                          "Output prefix (default: model path without .json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  train.model.forest_requested = train_strategy->count() > 0;
  bench.model.forest_requested = bench_strategy->count() > 0;
  // Degenerate ranges that pass the per-flag validators.
  for (double f : {train.test_fraction, bench.test_fraction}) {
    if (f <= 0.0 || f >= 1.0) {
      std::cerr << "--test-fraction must lie strictly between 0 and 1\n";
      return kExitUsage;
    }
  }

  try {
    if (*train_cmd) return cmd_train(train);
    if (*predict_cmd) return cmd_predict(predict);
    if (*bench_cmd) return cmd_bench(bench);
    if (*explain_cmd) return cmd_explain(explain);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
