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

#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "error.hpp"
#include "format.hpp"
#include "random.hpp"

namespace lht {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one CSV record. Double-quoted fields may contain commas; a doubled
// quote inside a quoted field is a literal quote.
std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(was_quoted ? current : trim(current));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(was_quoted ? current : trim(current));
  return fields;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> line_numbers;
};

RawTable read_table(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split_record(line);
    if (header_pending) {
      table.header = std::move(fields);
      header_pending = false;
      continue;
    }
    const std::size_t expected =
        !table.header.empty()    ? table.header.size()
        : !table.records.empty() ? table.records.front().size()
                                 : fields.size();
    if (fields.size() != expected) {
      throw Error(ErrorCode::kParse,
                  path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(expected) + " cells, found " +
                      std::to_string(fields.size()));
    }
    table.records.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure on '" + path + "'");
  if (table.records.empty()) {
    throw Error(ErrorCode::kData, "'" + path + "' contains no data rows");
  }
  return table;
}

double parse_cell(const std::string& cell, const std::string& path,
                  std::size_t line_no, std::size_t column) {
  const auto where = [&] {
    return path + ":" + std::to_string(line_no) + ": column " +
           std::to_string(column);
  };
  if (cell.empty()) {
    throw Error(ErrorCode::kParse, where() + ": missing value");
  }
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParse,
                where() + ": cannot parse '" + cell + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kParse,
                where() + ": non-finite value '" + cell + "'");
  }
  return value;
}

std::optional<std::size_t> parse_index(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::size_t resolve_label_column(const RawTable& table,
                                 const std::string& label_column) {
  const std::size_t width = table.records.front().size();
  const auto named =
      std::find(table.header.begin(), table.header.end(), label_column);
  if (named != table.header.end()) {
    return static_cast<std::size_t>(named - table.header.begin());
  }
  if (auto index = parse_index(label_column); index && *index < width) {
    return *index;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "label column '" + label_column + "' not found");
}

std::vector<std::string> feature_names_for(const RawTable& table,
                                           std::optional<std::size_t> skip) {
  const std::size_t width = table.records.front().size();
  std::vector<std::string> names;
  for (std::size_t c = 0; c < width; ++c) {
    if (skip && c == *skip) continue;
    names.push_back(table.header.empty() ? "x" + std::to_string(c)
                                         : table.header[c]);
  }
  return names;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out;
  out.features = features.select_rows(indices);
  if (labeled()) {
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) out.labels.push_back(labels[i]);
  }
  out.feature_names = feature_names;
  out.class_names = class_names;
  return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool header) {
  const RawTable table = read_table(path, header);
  const std::size_t label_col = resolve_label_column(table, label_column);
  const std::size_t width = table.records.front().size();
  if (width < 2) {
    throw Error(ErrorCode::kData, "'" + path + "' has no feature columns");
  }

  Dataset data;
  data.feature_names = feature_names_for(table, label_col);
  std::vector<double> values;
  values.reserve(table.records.size() * (width - 1));
  std::map<std::string, int> class_ids;
  for (std::size_t r = 0; r < table.records.size(); ++r) {
    const auto& record = table.records[r];
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_col) continue;
      values.push_back(parse_cell(record[c], path, table.line_numbers[r], c));
    }
    const std::string& label = record[label_col];
    if (label.empty()) {
      throw Error(ErrorCode::kParse, path + ":" +
                                         std::to_string(table.line_numbers[r]) +
                                         ": missing label");
    }
    auto [it, inserted] =
        class_ids.emplace(label, static_cast<int>(data.class_names.size()));
    if (inserted) data.class_names.push_back(label);
    data.labels.push_back(it->second);
  }
  data.features = Matrix(table.records.size(), width - 1, std::move(values));
  return data;
}

Dataset load_features_csv(const std::string& path, bool header) {
  const RawTable table = read_table(path, header);
  const std::size_t width = table.records.front().size();
  Dataset data;
  data.feature_names = feature_names_for(table, std::nullopt);
  std::vector<double> values;
  values.reserve(table.records.size() * width);
  for (std::size_t r = 0; r < table.records.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      values.push_back(
          parse_cell(table.records[r][c], path, table.line_numbers[r], c));
    }
  }
  data.features = Matrix(table.records.size(), width, std::move(values));
  return data;
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  if (data.labeled()) out << "class";
  for (std::size_t c = 0; c < data.cols(); ++c) {
    if (data.labeled() || c > 0) out << ',';
    out << csv_escape(data.feature_names[c]);
  }
  out << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (data.labeled()) out << csv_escape(data.class_names[data.labels[r]]);
    auto row = data.features.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (data.labeled() || c > 0) out << ',';
      out << format_exact(row[c]);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failure on '" + path + "'");
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data,
                                             double test_fraction,
                                             std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "test fraction must lie in (0, 1)");
  }
  const std::size_t n = data.rows();
  const auto n_test = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * test_fraction));
  if (n_test == 0 || n_test >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "split of " + std::to_string(n) +
                    " rows leaves an empty part");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto rng = make_rng({seed});
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[uniform_below(rng, i + 1)]);
  }
  std::vector<std::size_t> test(order.begin(), order.begin() + n_test);
  std::vector<std::size_t> train(order.begin() + n_test, order.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {data.subset(train), data.subset(test)};
}

NormStats compute_norm_stats(const Matrix& rows) {
  NormStats s;
  if (rows.empty()) return s;
  auto first = rows.row(0);
  s.mins.assign(first.begin(), first.end());
  s.maxs.assign(first.begin(), first.end());
  for (std::size_t r = 1; r < rows.rows(); ++r) {
    auto row = rows.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      s.mins[c] = std::min(s.mins[c], row[c]);
      s.maxs[c] = std::max(s.maxs[c], row[c]);
    }
  }
  return s;
}

void normalize_into(std::span<const double> x, const NormStats& s,
                    std::span<double> out) {
  check_dimension(x.size(), s.mins.size(), "normalize");
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = normalize_value(x[i], s.mins[i], s.maxs[i]);
  }
}

std::vector<double> normalize(std::span<const double> x, const NormStats& s) {
  std::vector<double> out(x.size());
  normalize_into(x, s, out);
  return out;
}

Matrix normalize_rows(const Matrix& rows, const NormStats& s) {
  Matrix out(rows.rows(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    normalize_into(rows.row(r), s, out.row(r));
  }
  return out;
}

std::vector<std::uint8_t> binary_labels(const Dataset& data, int target_class) {
  std::vector<std::uint8_t> out(data.labels.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = data.labels[i] == target_class ? 1 : 0;
  }
  return out;
}

}  // namespace lht
