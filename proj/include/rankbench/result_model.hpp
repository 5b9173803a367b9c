// Copyright 2026 The rankbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Benchmark result tables: one score per (algorithm, dataset, metric, seed),
// plus the metric registry that says which direction is better.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rankbench {

enum class Direction { kHigherBetter, kLowerBetter };

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct MetricSpec {
  std::string name;
  Direction direction = Direction::kHigherBetter;
  std::optional<Bounds> bounds;
};

// Thrown for input that parses but violates the data model. Carries one
// human-readable diagnostic per offending row or cell.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

class MetricRegistry {
 public:
  MetricRegistry() = default;

  // Throws ValidationError on a duplicate name or lo >= hi.
  void add(MetricSpec spec);

  const MetricSpec* find(std::string_view name) const;
  const MetricSpec& at(std::string_view name) const;
  // Sorted by name.
  const std::vector<MetricSpec>& metrics() const { return metrics_; }
  bool empty() const { return metrics_.empty(); }

  // Line-oriented key/value format:
  //   metric.<name>.direction = higher|lower
  //   metric.<name>.bounds = lo,hi
  // Blank lines and lines starting with '#' are ignored.
  static MetricRegistry parse(std::istream& in);
  static MetricRegistry parse(std::string_view text);
  void write(std::ostream& out) const;

  friend bool operator==(const MetricRegistry&, const MetricRegistry&);

 private:
  std::vector<MetricSpec> metrics_;
};

bool operator==(const Bounds&, const Bounds&);
bool operator==(const MetricSpec&, const MetricSpec&);

enum class Status { kOk, kOutOfMemory, kTimeout, kError };

std::string_view to_string(Status status);
std::optional<Status> parse_status(std::string_view text);

struct ResultRecord {
  std::string algorithm;
  std::string dataset;
  std::string metric;
  std::int64_t seed = 0;
  std::optional<double> value;
  Status status = Status::kOk;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct TestId {
  std::string dataset;
  std::string metric;

  friend auto operator<=>(const TestId&, const TestId&) = default;
  friend bool operator==(const TestId&, const TestId&) = default;
};

std::string to_string(const TestId& test);

struct Cell {
  std::optional<double> value;
  Status status = Status::kOk;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct TableOptions {
  // Drop every test that has any missing cell instead of rejecting the
  // table. Missing cells are never imputed.
  bool drop_incomplete_tests = false;
};

// A validated, complete grid of results. Immutable after construction.
class ResultTable {
 public:
  // Validates and indexes `records`. Throws ValidationError listing every
  // problem found (duplicates, unknown metrics, bounds violations, missing
  // cells, a < 2).
  static ResultTable from_records(std::vector<ResultRecord> records,
                                  MetricRegistry registry,
                                  const TableOptions& options = {},
                                  std::vector<std::string>* warnings = nullptr);

  const MetricRegistry& registry() const { return registry_; }
  const std::vector<TestId>& suite() const { return suite_; }
  const std::vector<std::string>& algorithms() const { return algorithms_; }
  const std::vector<std::int64_t>& seeds() const { return seeds_; }

  std::size_t num_algorithms() const { return algorithms_.size(); }
  std::size_t num_seeds() const { return seeds_.size(); }
  std::size_t num_tests() const { return suite_.size(); }

  const Cell& cell(std::size_t test, std::size_t seed,
                   std::size_t algorithm) const;
  const MetricSpec& metric_of(std::size_t test) const;

  // Records in canonical order: test, seed, algorithm.
  std::vector<ResultRecord> records() const;

  // Same grid with a different cell payload. Used by resolve_failures.
  ResultTable with_cells(std::vector<Cell> cells) const;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;

 private:
  ResultTable() = default;
  std::size_t index(std::size_t test, std::size_t seed,
                    std::size_t algorithm) const;

  MetricRegistry registry_;
  std::vector<TestId> suite_;
  std::vector<std::string> algorithms_;
  std::vector<std::int64_t> seeds_;
  std::vector<Cell> cells_;  // [test][seed][algorithm]
};

enum class InputFormat { kCsv, kJson };

// Header: algorithm,dataset,metric,seed,value,status
ResultTable ingest(std::istream& source, InputFormat format,
                   const MetricRegistry& registry,
                   const TableOptions& options = {},
                   std::vector<std::string>* warnings = nullptr);

void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);

// Gives every non-ok record the worst possible value for its metric: the
// bad end of the bounds when the metric has them, otherwise one unit past
// the worst ok value observed on that test (0 if the test has none).
ResultTable resolve_failures(const ResultTable& table);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace rankbench
