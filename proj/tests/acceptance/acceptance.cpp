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

// Acceptance suite. Prints one PASS / FAIL / SKIP line per criterion.
//
//   lht_acceptance                 run every criterion
//   lht_acceptance --criterion N   run criterion N only
//
// Exit status: 0 when everything run passed, 1 on any failure, 77 when
// nothing failed but a criterion could not run for lack of data files.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "explain.hpp"
#include "forest.hpp"
#include "membership.hpp"
#include "model.hpp"
#include "model_io.hpp"
#include "split_engine.hpp"
#include "test_support.hpp"
#include "tree.hpp"

namespace lht {
namespace {

using Clock = std::chrono::steady_clock;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::vector<std::string> details;

  void note(const std::string& line) { details.push_back(line); }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      status = Status::kFail;
      note("violated: " + what);
    }
  }
  void skip(const std::string& why) {
    if (status == Status::kPass) status = Status::kSkip;
    note("not run: " + why);
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::optional<Dataset> try_load(const std::string& file,
                                const std::string& label) {
  const auto path = testing::data_file(file);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return load_csv(path.string(), label, true);
}

bool leaves_all_pure(const LhtTree& t) {
  return std::all_of(t.blocks.begin(), t.blocks.end(), [](const Block& b) {
    return !b.is_leaf() || b.purity.has_value();
  });
}

// ---- 1: wine ---------------------------------------------------------------

Outcome wine_reproduction() {
  Outcome out;
  const auto start = Clock::now();
  const auto wine = try_load("wine.csv", "class");
  if (!wine) {
    out.skip("wine.csv missing");
    return out;
  }
  for (double beta : {0.0, 0.25}) {
    Hyperparams hp;
    hp.beta = beta;
    double sum = 0.0;
    int perfect_seeds = 0;
    int pure_seeds = 0;
    int pure_seeds_fitted = 0;
    std::string per_seed;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto [train, test] = train_test_split(*wine, 0.2, seed);
      const MulticlassModel m = train_multiclass(train, hp);
      const double test_acc = evaluate(m, test).accuracy;
      const double train_acc = evaluate(m, train).accuracy;
      sum += test_acc;
      perfect_seeds += test_acc == 1.0;
      per_seed += fmt(" %.1f", 100 * test_acc);
      // Exact training fit is only promised when every leaf is pure and no
      // training sample sits on its last hyperplane (d = 0).
      bool pure = true;
      for (const auto& t : m.trees) pure &= leaves_all_pure(t);
      bool off_boundary = true;
      for (std::size_t i = 0; i < train.rows() && pure; ++i) {
        for (const auto& t : m.trees) {
          off_boundary &= find_leaf(t, train.features.row(i)).final_d > 0.0;
        }
      }
      if (pure && off_boundary) {
        ++pure_seeds;
        pure_seeds_fitted += train_acc == 1.0;
      }
      if (beta == 0.0 && pure && !off_boundary) {
        out.note(fmt("beta 0 seed %llu: all leaves pure but a training "
                     "sample has d = 0 (train acc %.2f%%)",
                     static_cast<unsigned long long>(seed), 100 * train_acc));
      }
    }
    const double mean = sum / 10.0;
    out.note(fmt("beta %.2f: mean test acc %.2f%% over seeds 0-9 [%s ], "
                 "%d seed(s) at 100%%",
                 beta, 100 * mean, per_seed.c_str(), perfect_seeds));
    out.require(mean >= 0.97, fmt("beta %.2f mean test accuracy >= 97%%", beta));
    out.require(perfect_seeds >= 1,
                fmt("beta %.2f reaches 100%% on at least one seed", beta));
    if (beta == 0.0) {
      out.note(fmt("beta 0: %d/%d qualifying seeds fit the training set "
                   "exactly",
                   pure_seeds_fitted, pure_seeds));
      out.require(pure_seeds_fitted == pure_seeds,
                  "100% training accuracy on qualifying seeds");
    }
  }
  const double elapsed = seconds_since(start);
  out.note(fmt("runtime %.3f s", elapsed));
  out.require(elapsed < 5.0, "runtime < 5 s");
  return out;
}

// ---- 2: small-dataset suite ----------------------------------------------

Outcome small_suite() {
  Outcome out;
  const auto start = Clock::now();
  struct Case {
    const char* file;
    const char* label;
    double threshold;
  };
  for (const Case& c : {Case{"banknote.csv", "class", 0.99},
                        Case{"wdbc.csv", "class", 0.96},
                        Case{"seeds.csv", "class", 0.90}}) {
    const auto data = try_load(c.file, c.label);
    if (!data) {
      out.skip(std::string(c.file) + " not found in " +
               testing::data_dir().string());
      continue;
    }
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto [train, test] = train_test_split(*data, 0.2, seed);
      sum += evaluate(train_multiclass(train, {}), test).accuracy;
    }
    const double mean = sum / 10.0;
    out.note(fmt("%s: mean test acc %.2f%% over seeds 0-9 (threshold %.0f%%)",
                 c.file, 100 * mean, 100 * c.threshold));
    out.require(mean >= c.threshold,
                fmt("%s mean test accuracy >= %.0f%%", c.file, 100 * c.threshold));
  }
  const double elapsed = seconds_since(start);
  out.note(fmt("runtime %.2f s", elapsed));
  out.require(elapsed < 30.0, "runtime < 30 s");
  return out;
}

// ---- 3: inference latency ------------------------------------------------

// Visited hyperplane terms plus nonzero leaf coefficients for one sample.
std::size_t path_cost(const LhtTree& t, std::span<const double> x) {
  const PredictionTrace trace = find_leaf(t, x);
  std::size_t cost = 0;
  for (const TraceStep& s : trace.path) {
    const Block& b = t.blocks[s.block_id];
    if (b.is_leaf()) {
      for (double a : b.membership->coeffs) cost += a != 0.0;
    } else {
      cost += b.hyperplane->features.size();
    }
  }
  return cost;
}

double time_per_call_ns(const std::function<void(std::size_t)>& call,
                        std::size_t rows) {
  // Repeat until at least 50 ms have elapsed; report the best of 3 rounds.
  double best = INFINITY;
  for (int round = 0; round < 3; ++round) {
    std::size_t calls = 0;
    const auto start = Clock::now();
    double elapsed = 0.0;
    do {
      for (std::size_t r = 0; r < rows; ++r) call(r);
      calls += rows;
      elapsed = seconds_since(start);
    } while (elapsed < 0.05);
    best = std::min(best, 1e9 * elapsed / static_cast<double>(calls));
  }
  return best;
}

Outcome inference_latency() {
  Outcome out;
  std::string name = "banknote.csv";
  auto data = try_load(name, "class");
  if (!data) {
    name = "wdbc.csv";
    data = try_load(name, "class");
    out.note("banknote.csv not found; measuring on wdbc.csv (30 features "
             "instead of 4)");
  }
  if (!data) {
    out.skip("neither banknote.csv nor wdbc.csv found");
    return out;
  }
  const auto [train, test] = train_test_split(*data, 0.2, 0);
  const Model model = train_multiclass(train, {});
  volatile int sink = 0;
  const double ns = time_per_call_ns(
      [&](std::size_t r) { sink = sink + predict(model, test.features.row(r)).label; },
      test.rows());
  out.note(fmt("%s: %.3f us per sample (all %zu class trees)", name.c_str(),
               ns / 1000.0, data->num_classes()));
  out.require(ns < 10'000.0, "per-sample inference < 10 us");

  // Scaling: per-tree latency against depth x active features.
  std::vector<double> cost, latency;
  for (std::size_t m : {4, 16, 64}) {
    for (std::size_t depth : {1, 4, 16, 64}) {
      const Dataset d = testing::gaussian_blobs(600, m, 2, 0.15, m * 100 + depth);
      Hyperparams hp;
      hp.max_depth = depth;
      const LhtTree t = train_tree(BinaryView(d, 0), hp);
      double c = 0.0;
      for (std::size_t r = 0; r < d.rows(); ++r) c += path_cost(t, d.features.row(r));
      volatile double s = 0.0;
      const double tree_ns = time_per_call_ns(
          [&](std::size_t r) { s = s + score_tree(t, d.features.row(r)); }, d.rows());
      cost.push_back(c / static_cast<double>(d.rows()));
      latency.push_back(tree_ns);
    }
  }
  // Least-squares line latency = a + b * cost, with R^2.
  Eigen::MatrixXd a(cost.size(), 2);
  Eigen::VectorXd y(cost.size());
  for (std::size_t i = 0; i < cost.size(); ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = cost[i];
    y(i) = latency[i];
  }
  const Eigen::Vector2d fit = a.colPivHouseholderQr().solve(y);
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (a * fit - y).squaredNorm();
  out.note(fmt("per-tree latency = %.1f ns + %.2f ns x (visited terms), "
               "R^2 = %.3f over %zu trees (costs %.0f..%.0f terms); "
               "reported, not gated",
               fit(0), fit(1), 1.0 - ss_res / ss_tot, cost.size(),
               *std::min_element(cost.begin(), cost.end()),
               *std::max_element(cost.begin(), cost.end())));
  return out;
}

// ---- 4: least-squares oracle ---------------------------------------------

struct Fit {
  std::vector<double> a;
  double b = 0.0;
};

// Two-pass covariance over variance, independent of the library's
// one-pass moment formula.
Fit covariance_oracle(const Matrix& x, std::span<const std::uint8_t> p) {
  const std::size_t n = x.rows();
  double mp = 0.0;
  for (auto v : p) mp += v;
  mp /= static_cast<double>(n);
  Fit f;
  f.b = mp;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx += x(i, j);
    mx /= static_cast<double>(n);
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cov += (x(i, j) - mx) * (p[i] - mp);
      var += (x(i, j) - mx) * (x(i, j) - mx);
    }
    const double a = var > 0.0 ? cov / var : 0.0;
    f.a.push_back(a);
    f.b -= a * mx;
  }
  return f;
}

// Full least squares with an intercept via the normal equations.
Fit normal_equations_oracle(const Matrix& x, std::span<const std::uint8_t> p) {
  const auto n = static_cast<Eigen::Index>(x.rows());
  const auto m = static_cast<Eigen::Index>(x.cols());
  Eigen::MatrixXd a(n, m + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    for (Eigen::Index j = 0; j < m; ++j) a(i, j + 1) = x(i, j);
    y(i) = p[i];
  }
  const Eigen::VectorXd theta = (a.transpose() * a).ldlt().solve(a.transpose() * y);
  Fit f;
  f.b = theta(0);
  for (Eigen::Index j = 0; j < m; ++j) f.a.push_back(theta(j + 1));
  return f;
}

double max_error(const MembershipFn& got, const Fit& want) {
  double err = std::abs(got.intercept - want.b);
  for (std::size_t j = 0; j < want.a.size(); ++j) {
    err = std::max(err, std::abs(got.coeffs[j] - want.a[j]));
  }
  return err;
}

Outcome least_squares_oracle() {
  Outcome out;
  constexpr double kTol = 1e-9;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> n_dist(2, 50), m_dist(1, 8);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = n_dist(rng), m = m_dist(rng);
    Matrix x(n, m);
    std::vector<std::uint8_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = coin(rng);
      for (std::size_t j = 0; j < m; ++j) x(i, j) = value(rng);
    }
    std::vector<std::size_t> features(m);
    std::iota(features.begin(), features.end(), std::size_t{0});
    worst = std::max(worst, max_error(fit_membership(x, p, features),
                                      covariance_oracle(x, p)));
  }
  out.note(fmt("200 random blocks (n <= 50, m <= 8): max |error| %.2e vs "
               "two-pass covariance",
               worst));
  out.require(worst <= kTol, "random blocks within 1e-9");

  // Full-factorial designs on {0, 1} have mutually orthogonal centred
  // columns, so the per-feature form is the exact least-squares solution.
  double worst_ortho = 0.0;
  int designs = 0;
  for (std::size_t m = 1; m <= 6; ++m) {
    for (std::size_t reps : {1, 3}) {
      const std::size_t n = (std::size_t{1} << m) * reps;
      Matrix x(n, m);
      std::vector<std::uint8_t> p(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t cell = i % (std::size_t{1} << m);
        for (std::size_t j = 0; j < m; ++j) x(i, j) = (cell >> j) & 1;
        p[i] = coin(rng);
      }
      std::vector<std::size_t> features(m);
      std::iota(features.begin(), features.end(), std::size_t{0});
      worst_ortho = std::max(worst_ortho, max_error(fit_membership(x, p, features),
                                                    normal_equations_oracle(x, p)));
      ++designs;
    }
  }
  out.note(fmt("%d orthogonal full-factorial designs: max |error| %.2e vs "
               "normal equations",
               designs, worst_ortho));
  out.require(worst_ortho <= kTol, "orthogonal designs within 1e-9");
  return out;
}

// ---- 5: split-count oracle -----------------------------------------------

SideCounts brute_force_counts(const std::vector<double>& fs,
                              std::span<const std::uint8_t> y) {
  SideCounts n{};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    bool below_all_other = true, above_all_other = true;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (y[j] == y[i]) continue;
      below_all_other &= fs[i] < fs[j];
      above_all_other &= fs[i] > fs[j];
    }
    if (y[i]) {
      n[0] += below_all_other;
      n[1] += above_all_other;
    } else {
      n[2] += below_all_other;
      n[3] += above_all_other;
    }
  }
  return n;
}

Outcome split_count_oracle() {
  Outcome out;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> gamma_dist(1, 3);
  std::map<ConstantSource, int> sources;
  int checked = 0, count_mismatch = 0, impure = 0, not_run = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto block = testing::random_block(rng, 2, 60, 6);
    // Mirror half the blocks so every constant source gets exercised.
    if (trial % 2) {
      for (auto& y : block.labels) y = 1 - y;
    }
    const SplitParams params{0.0, 0.0, gamma_dist(rng)};
    const SplitResult r = split_block(block.rows, block.labels, params);
    if (r.status != SplitStatus::kOk) {
      ++not_run;
      continue;
    }
    ++checked;
    const Hyperplane& h = r.outcome.hyperplane;
    const NormStats norm = compute_norm_stats(block.rows);
    std::vector<double> fs;
    for (std::size_t i = 0; i < block.rows.rows(); ++i) {
      fs.push_back(feature_sum(normalize(block.rows.row(i), norm), h));
    }
    const SideCounts want = brute_force_counts(fs, block.labels);
    count_mismatch += r.outcome.counts != want;
    ++sources[h.c_source];
    if (h.c_source == ConstantSource::kAverage) continue;
    // Which side must be pure, and with which label.
    const bool left = h.c_source == ConstantSource::kMinNFS ||
                      h.c_source == ConstantSource::kMinTFS;
    const std::uint8_t label = h.c_source == ConstantSource::kMinNFS ||
                               h.c_source == ConstantSource::kMaxNFS;
    const std::size_t promised =
        want[static_cast<std::size_t>(h.c_source)];
    const auto& side = left ? r.outcome.left_rows : r.outcome.right_rows;
    bool ok = side.size() == promised && promised >= params.gamma;
    for (std::size_t row : side) ok &= block.labels[row] == label;
    impure += !ok;
  }
  std::string mix;
  for (const auto& [source, n] : sources) {
    mix += fmt(" %s=%d", std::string(to_string(source)).c_str(), n);
  }
  out.note(fmt("500 random blocks: %d split (%d indistinguishable or "
               "degenerate); sources:%s",
               checked, not_run, mix.c_str()));
  out.note(fmt("count mismatches %d, broken purity promises %d",
               count_mismatch, impure));
  out.require(count_mismatch == 0, "side counts equal brute-force recounts");
  out.require(impure == 0, "non-average splits yield the promised pure side");
  out.require(checked >= 400, "at least 400 blocks produce a split");
  return out;
}

// ---- 6: property suite ---------------------------------------------------

Outcome property_suite() {
  Outcome out;
  int weight_bound = 0, beta_mono = 0, ranges = 0, pure_const = 0,
      reduction = 0, wolf = 0, binary = 0, round_trip = 0, determinism = 0;
  int total = 0;
  auto fail = [&](int& counter) { ++counter; };
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> far(-10.0, 10.0);

  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t k = 2 + seed % 3;
    const Dataset d = testing::gaussian_blobs(120, 2 + seed % 6, k, 0.35, seed);
    const MulticlassModel m = train_multiclass(d, {});
    ++total;

    std::vector<std::vector<double>> probes;
    for (std::size_t r = 0; r < d.rows(); r += 3) {
      const auto row = d.features.row(r);
      probes.emplace_back(row.begin(), row.end());
    }
    for (int i = 0; i < 20; ++i) {
      std::vector<double> x(d.cols());
      for (auto& v : x) v = far(rng);
      probes.push_back(std::move(x));
    }

    for (const LhtTree& t : m.trees) {
      const TreeShape shape = tree_shape(t);
      if (shape.branching + 1 != shape.leaves) fail(binary);
      for (const Block& b : t.blocks) {
        if (!b.is_leaf()) {
          double hi = 0.0;
          for (double w : b.hyperplane->weights) hi = std::max(hi, std::abs(w));
          if (hi != 1.0) fail(weight_bound);
        } else if (b.purity) {
          const MembershipFn& f = *b.membership;
          const bool zero = std::all_of(f.coeffs.begin(), f.coeffs.end(),
                                        [](double a) { return a == 0.0; });
          if (!zero || f.label_mean != *b.purity) fail(pure_const);
        }
      }
      for (const auto& x : probes) {
        const PredictionTrace tr = find_leaf(t, x);
        if (!(tr.mu >= 0 && tr.mu <= 1 && tr.final_d >= 0 && tr.final_d <= 1 &&
              tr.score >= 0 && tr.score <= 1 && tr.score == tr.final_d * tr.mu)) {
          fail(ranges);
        }
      }
    }

    // Beta monotonicity on the root block of every class.
    for (std::size_t c = 0; c < k; ++c) {
      const auto y = binary_labels(d, static_cast<int>(c));
      std::vector<std::size_t> previous;
      bool first = true;
      for (double beta : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const SplitResult r = split_block(d.features, y, {0.0, beta, 1});
        if (r.status != SplitStatus::kOk) break;
        auto feats = r.outcome.hyperplane.features;
        std::sort(feats.begin(), feats.end());
        if (!first && !std::includes(previous.begin(), previous.end(),
                                     feats.begin(), feats.end())) {
          fail(beta_mono);
        }
        previous = feats;
        first = false;
      }
    }

    // t = 1 forest equals the single-tree model; WOLF bounds for t = 4.
    const LhForest one = train_forest(d, {}, ForestSpec{});
    ForestSpec bag;
    bag.trees = 4;
    bag.strategy = ForestStrategy::kBagging;
    bag.seed = seed;
    const LhForest four = train_forest(d, {}, bag);
    for (const auto& x : probes) {
      const Prediction a = predict(m, x);
      const Prediction b = predict_forest(one, x);
      if (a.label != b.label || a.scores != b.scores) fail(reduction);
      for (std::size_t c = 0; c < k; ++c) {
        double lo = 1.0, hi = 0.0;
        for (const LhtTree& t : four.trees[c]) {
          lo = std::min(lo, score_tree(t, x));
          hi = std::max(hi, score_tree(t, x));
        }
        const double s = score_forest(four, c, x);
        if (!(s >= lo && s <= hi && s >= 0.0 && s <= 1.0)) fail(wolf);
      }
    }

    // Serialization round trip: bit-identical predictions.
    for (const Model& model : {Model(m), Model(four)}) {
      const Model back = model_from_string(model_to_string(model));
      for (const auto& x : probes) {
        if (predict(model, x).scores != predict(back, x).scores) fail(round_trip);
      }
    }

    // Same data, config and seed give the same artifacts.
    const auto [tr1, te1] = train_test_split(d, 0.2, seed);
    const auto [tr2, te2] = train_test_split(d, 0.2, seed);
    if (!(tr1.features == tr2.features && te1.labels == te2.labels)) {
      fail(determinism);
    }
    if (model_to_string(train_forest(tr1, {}, bag, 1)) !=
        model_to_string(train_forest(tr2, {}, bag, 3))) {
      fail(determinism);
    }
  }

  out.note(fmt("%d random datasets, 2-4 classes, 2-7 features", total));
  out.note(fmt("violations: weight bound %d, beta monotonicity %d, "
               "mu/d/score range %d, pure-leaf constant %d, t=1 reduction %d, "
               "forest bound %d, branching = leaves - 1 %d, round trip %d, "
               "determinism %d",
               weight_bound, beta_mono, ranges, pure_const, reduction, wolf,
               binary, round_trip, determinism));
  out.require(weight_bound == 0, "max |w| = 1 and all |w| <= 1");
  out.require(beta_mono == 0, "active features shrink as beta grows");
  out.require(ranges == 0, "mu, d and d*mu in [0, 1]");
  out.require(pure_const == 0, "pure leaves have constant membership");
  out.require(reduction == 0, "t = 1 forest equals the single tree");
  out.require(wolf == 0, "forest score within per-tree extremes");
  out.require(binary == 0, "branching = leaves - 1");
  out.require(round_trip == 0, "serialization round trip");
  out.require(determinism == 0, "end-to-end seed determinism");
  return out;
}

// ---- 7: interpretability -------------------------------------------------

Outcome single_feature_separation() {
  Outcome out;
  int runs = 0, failures = 0;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.25);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t j : {0, 3, 7}) {
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<std::vector<double>> rows;
      std::vector<int> labels;
      for (int i = 0; i < 300; ++i) {
        const int y = i % 2;
        std::vector<double> x(8);
        for (auto& v : x) v = uniform(rng);
        x[j] = y + noise(rng);
        rows.push_back(std::move(x));
        labels.push_back(y);
      }
      const MulticlassModel m =
          train_multiclass(testing::make_dataset(rows, labels, 2), {});
      for (const auto& e : explain_model(m)) {
        if (e.block_id != 0) continue;
        ++runs;
        bool ok = e.weights.front().feature == j &&
                  std::abs(e.weights.front().weight) == 1.0;
        for (std::size_t k = 1; k < e.weights.size(); ++k) {
          ok &= std::abs(e.weights[k].weight) < 1.0;
        }
        if (!ok) {
          ++failures;
          out.note(fmt("feature %zu class %d: top feature %zu (|w| = %.3f)", j,
                       e.target_class, e.weights.front().feature,
                       std::abs(e.weights.front().weight)));
        }
      }
    }
  }
  out.note(fmt("%d root blocks over 9 synthetic datasets (signal in feature "
               "0, 3 or 7 of 8)",
               runs));
  out.require(runs == 18, "every class tree has a branching root");
  out.require(failures == 0, "|w_j| = 1 and every other |w_i| < 1 at the root");
  return out;
}

// ---- 8: medium datasets through the CLI ----------------------------------

Outcome medium_datasets() {
  Outcome out;
  struct Case {
    const char* file;
    const char* label;
  };
  testing::TempDir dir;
  for (const Case& c : {Case{"spambase.csv", "spam"}, Case{"rice.csv", "class"}}) {
    const auto path = testing::data_file(c.file);
    if (!std::filesystem::exists(path)) {
      out.skip(std::string(c.file) + " not found in " +
               testing::data_dir().string());
      continue;
    }
    const std::string tsv = dir.file("bench.tsv");
    const std::string command = std::string("\"") + LHT_CLI_PATH +
                                "\" bench --data \"" + path.string() +
                                "\" --label " + c.label + " --out \"" + tsv +
                                "\" > \"" + dir.file("stdout.txt") + "\" 2>&1";
    const auto start = Clock::now();
    const int rc = std::system(command.c_str());
    const double elapsed = seconds_since(start);
    std::ifstream in(tsv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    auto column = [&](const std::string& name) {
      std::istringstream h(header), r(row);
      std::string key, value;
      while (std::getline(h, key, '\t') && std::getline(r, value, '\t')) {
        if (key == name) return value;
      }
      return std::string("?");
    };
    out.note(fmt("%s: bench exit %d in %.1f s; test acc %s%% (sd %s) over %s "
                 "repeats",
                 c.file, rc, elapsed, column("test_acc_mean").substr(0, 6).c_str(),
                 column("test_acc_std").substr(0, 5).c_str(),
                 column("repeats").c_str()));
    out.require(rc == 0 && column("status") == "ok",
                std::string(c.file) + " bench completes");
    out.require(elapsed < 300.0, std::string(c.file) + " under 5 minutes");
  }
  return out;
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "wine reproduction", wine_reproduction},
    {2, "small-dataset suite", small_suite},
    {3, "inference latency", inference_latency},
    {4, "least-squares oracle", least_squares_oracle},
    {5, "split-count oracle", split_count_oracle},
    {6, "property suite", property_suite},
    {7, "single-feature interpretability", single_feature_separation},
    {8, "medium datasets via bench", medium_datasets},
};

}  // namespace
}  // namespace lht

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool failed = false, skipped = false;
  for (const auto& c : lht::kCriteria) {
    if (only && c.id != only) continue;
    lht::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.status = lht::Status::kFail;
      o.note(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == lht::Status::kPass   ? "PASS"
                      : o.status == lht::Status::kFail ? "FAIL"
                                                       : "SKIP";
    std::printf("[%s] criterion %d: %s\n", tag, c.id, c.title);
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
    failed |= o.status == lht::Status::kFail;
    skipped |= o.status == lht::Status::kSkip;
  }
  return failed ? 1 : skipped ? 77 : 0;
}
