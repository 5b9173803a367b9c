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

#include "rankbench/result_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace rankbench {
namespace {

constexpr std::string_view kCsvHeader[] = {"algorithm", "dataset", "metric",
                                           "seed",      "value",   "status"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return v;
}

// RFC 4180 style: fields may be double-quoted, "" escapes a quote.
// Returns false on an unterminated quote.
bool split_csv_line(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return !quoted;
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

bool is_identifier(std::string_view s) {
  return !s.empty() && s.find_first_of("\n\r") == std::string_view::npos;
}

// Validates one row's fields and appends a diagnostic on failure.
std::optional<ResultRecord> make_record(std::string_view algorithm,
                                        std::string_view dataset,
                                        std::string_view metric,
                                        std::optional<std::int64_t> seed,
                                        std::optional<double> value,
                                        std::string_view status_text,
                                        bool value_malformed,
                                        const std::string& where,
                                        std::vector<std::string>& diags) {
  std::vector<std::string> problems;
  if (!is_identifier(algorithm)) problems.push_back("empty algorithm");
  if (!is_identifier(dataset)) problems.push_back("empty dataset");
  if (!is_identifier(metric)) problems.push_back("empty metric");
  if (!seed) problems.push_back("seed is not an integer");
  if (value_malformed) problems.push_back("value is not a real number");
  if (value && !std::isfinite(*value)) problems.push_back("value not finite");
  const auto status = parse_status(status_text);
  if (!status) {
    problems.push_back("unknown status '" + std::string(status_text) + "'");
  } else if (*status == Status::kOk && !value && !value_malformed) {
    problems.push_back("status ok requires a value");
  }
  if (!problems.empty()) {
    diags.push_back(where + ": malformed row: " + join(problems));
    return std::nullopt;
  }
  return ResultRecord{std::string(algorithm), std::string(dataset),
                      std::string(metric),    *seed,
                      value,                  *status};
}

std::vector<ResultRecord> read_csv_records(std::istream& in,
                                           std::vector<std::string>& diags) {
  std::vector<ResultRecord> records;
  std::string line;
  std::vector<std::string> fields;
  std::size_t row = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const std::string where = "row " + std::to_string(row);
    if (!split_csv_line(line, fields)) {
      diags.push_back(where + ": malformed row: unterminated quote");
      continue;
    }
    if (!have_header) {
      bool ok = fields.size() == std::size(kCsvHeader);
      for (std::size_t i = 0; ok && i < fields.size(); ++i) {
        ok = trim(fields[i]) == kCsvHeader[i];
      }
      if (!ok) {
        throw ValidationError({where +
                               ": header must be exactly "
                               "algorithm,dataset,metric,seed,value,status"});
      }
      have_header = true;
      continue;
    }
    if (fields.size() != std::size(kCsvHeader)) {
      diags.push_back(where + ": malformed row: expected 6 fields, got " +
                      std::to_string(fields.size()));
      continue;
    }
    const std::string_view value_text = trim(fields[4]);
    const auto value = parse_real(value_text);
    const bool value_malformed = !value_text.empty() && !value;
    if (auto rec = make_record(trim(fields[0]), trim(fields[1]),
                               trim(fields[2]), parse_int(fields[3]), value,
                               trim(fields[5]), value_malformed, where, diags)) {
      records.push_back(std::move(*rec));
    }
  }
  if (!have_header) throw ValidationError({"input is empty: missing header"});
  return records;
}

std::vector<ResultRecord> read_json_records(std::istream& in,
                                            std::vector<std::string>& diags) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError({std::string("invalid JSON: ") + e.what()});
  }
  if (!doc.is_array()) {
    throw ValidationError({"JSON input must be an array of records"});
  }
  std::vector<ResultRecord> records;
  std::size_t row = 0;
  for (const auto& obj : doc) {
    ++row;
    const std::string where = "row " + std::to_string(row);
    if (!obj.is_object()) {
      diags.push_back(where + ": malformed row: not an object");
      continue;
    }
    auto str = [&](const char* key) -> std::string {
      const auto it = obj.find(key);
      return it != obj.end() && it->is_string() ? it->get<std::string>()
                                                : std::string();
    };
    std::optional<std::int64_t> seed;
    if (auto it = obj.find("seed"); it != obj.end()) {
      if (it->is_number_integer()) {
        seed = it->get<std::int64_t>();
      } else if (it->is_string()) {
        seed = parse_int(it->get_ref<const std::string&>());
      }
    }
    std::optional<double> value;
    bool value_malformed = false;
    if (auto it = obj.find("value"); it != obj.end() && !it->is_null()) {
      if (it->is_number()) {
        value = it->get<double>();
      } else if (it->is_string() && !trim(it->get_ref<const std::string&>()).empty()) {
        value = parse_real(it->get_ref<const std::string&>());
        value_malformed = !value;
      } else if (!it->is_string()) {
        value_malformed = true;
      }
    }
    if (auto rec = make_record(str("algorithm"), str("dataset"), str("metric"),
                               seed, value, str("status"), value_malformed,
                               where, diags)) {
      records.push_back(std::move(*rec));
    }
  }
  return records;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> diagnostics)
    : std::runtime_error(diagnostics.empty() ? std::string("validation failed")
                                             : diagnostics.front()),
      diagnostics_(std::move(diagnostics)) {}

bool operator==(const Bounds& a, const Bounds& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

bool operator==(const MetricSpec& a, const MetricSpec& b) {
  return a.name == b.name && a.direction == b.direction && a.bounds == b.bounds;
}

bool operator==(const MetricRegistry& a, const MetricRegistry& b) {
  return a.metrics_ == b.metrics_;
}

void MetricRegistry::add(MetricSpec spec) {
  if (!is_identifier(spec.name)) {
    throw ValidationError({"metric name must be non-empty"});
  }
  if (spec.bounds && !(spec.bounds->lo < spec.bounds->hi)) {
    throw ValidationError({"metric '" + spec.name + "': bounds need lo < hi"});
  }
  auto it = std::lower_bound(
      metrics_.begin(), metrics_.end(), spec.name,
      [](const MetricSpec& m, const std::string& n) { return m.name < n; });
  if (it != metrics_.end() && it->name == spec.name) {
    throw ValidationError({"duplicate metric '" + spec.name + "'"});
  }
  metrics_.insert(it, std::move(spec));
}

const MetricSpec* MetricRegistry::find(std::string_view name) const {
  auto it = std::lower_bound(
      metrics_.begin(), metrics_.end(), name,
      [](const MetricSpec& m, std::string_view n) { return m.name < n; });
  if (it != metrics_.end() && it->name == name) return &*it;
  return nullptr;
}

const MetricSpec& MetricRegistry::at(std::string_view name) const {
  const MetricSpec* spec = find(name);
  if (!spec) throw std::out_of_range("unknown metric '" + std::string(name) + "'");
  return *spec;
}

MetricRegistry MetricRegistry::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

MetricRegistry MetricRegistry::parse(std::istream& in) {
  struct Pending {
    std::optional<Direction> direction;
    std::optional<Bounds> bounds;
  };
  std::map<std::string, Pending> pending;
  std::vector<std::string> diags;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "registry line " + std::to_string(lineno);
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      diags.push_back(where + ": expected 'key = value'");
      continue;
    }
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    constexpr std::string_view kPrefix = "metric.";
    const auto dot = key.rfind('.');
    if (key.substr(0, kPrefix.size()) != kPrefix || dot < kPrefix.size() + 1) {
      diags.push_back(where + ": key must look like metric.<name>.<field>");
      continue;
    }
    const std::string name(key.substr(kPrefix.size(), dot - kPrefix.size()));
    const std::string_view field = key.substr(dot + 1);
    auto& entry = pending[name];
    if (field == "direction") {
      if (value == "higher") {
        entry.direction = Direction::kHigherBetter;
      } else if (value == "lower") {
        entry.direction = Direction::kLowerBetter;
      } else {
        diags.push_back(where + ": direction must be higher or lower");
      }
    } else if (field == "bounds") {
      const auto comma = value.find(',');
      const auto lo = comma == std::string_view::npos
                          ? std::nullopt
                          : parse_real(value.substr(0, comma));
      const auto hi = comma == std::string_view::npos
                          ? std::nullopt
                          : parse_real(value.substr(comma + 1));
      if (!lo || !hi) {
        diags.push_back(where + ": bounds must be 'lo,hi'");
      } else {
        entry.bounds = Bounds{*lo, *hi};
      }
    } else {
      diags.push_back(where + ": unknown field '" + std::string(field) + "'");
    }
  }
  MetricRegistry registry;
  for (auto& [name, entry] : pending) {
    if (!entry.direction) {
      diags.push_back("metric '" + name + "' has no direction");
      continue;
    }
    try {
      registry.add(MetricSpec{name, *entry.direction, entry.bounds});
    } catch (const ValidationError& e) {
      diags.push_back(e.what());
    }
  }
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return registry;
}

void MetricRegistry::write(std::ostream& out) const {
  for (const auto& m : metrics_) {
    out << "metric." << m.name << ".direction = "
        << (m.direction == Direction::kHigherBetter ? "higher" : "lower")
        << '\n';
    if (m.bounds) {
      out << "metric." << m.name << ".bounds = " << format_double(m.bounds->lo)
          << ',' << format_double(m.bounds->hi) << '\n';
    }
  }
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOk:
      return "ok";
    case Status::kOutOfMemory:
      return "oom";
    case Status::kTimeout:
      return "timeout";
    case Status::kError:
      return "error";
  }
  return "error";
}

std::optional<Status> parse_status(std::string_view text) {
  if (text == "ok") return Status::kOk;
  if (text == "oom") return Status::kOutOfMemory;
  if (text == "timeout") return Status::kTimeout;
  if (text == "error") return Status::kError;
  return std::nullopt;
}

std::string to_string(const TestId& test) {
  return test.dataset + "/" + test.metric;
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

ResultTable ResultTable::from_records(std::vector<ResultRecord> records,
                                      MetricRegistry registry,
                                      const TableOptions& options,
                                      std::vector<std::string>* warnings) {
  std::vector<std::string> diags;

  std::vector<std::string> algorithms, datasets, metrics;
  std::vector<std::int64_t> seeds;
  std::set<std::string> unknown_metrics;
  for (const auto& r : records) {
    algorithms.push_back(r.algorithm);
    datasets.push_back(r.dataset);
    metrics.push_back(r.metric);
    seeds.push_back(r.seed);
    const MetricSpec* spec = registry.find(r.metric);
    if (!spec) {
      unknown_metrics.insert(r.metric);
    } else if (r.value && spec->bounds &&
               (*r.value < spec->bounds->lo || *r.value > spec->bounds->hi)) {
      diags.push_back("value " + format_double(*r.value) + " for " +
                      r.algorithm + " on " + r.dataset + "/" + r.metric +
                      " seed " + std::to_string(r.seed) +
                      " is outside the metric bounds");
    }
  }
  for (const auto& m : unknown_metrics) {
    diags.push_back("unknown metric '" + m + "' (not in registry)");
  }

  ResultTable table;
  table.registry_ = std::move(registry);
  table.algorithms_ = sorted_unique(std::move(algorithms));
  table.seeds_ = sorted_unique(std::move(seeds));
  datasets = sorted_unique(std::move(datasets));
  metrics = sorted_unique(std::move(metrics));
  for (const auto& d : datasets) {
    for (const auto& m : metrics) table.suite_.push_back(TestId{d, m});
  }

  const std::size_t a = table.algorithms_.size();
  const std::size_t n = table.seeds_.size();
  const std::size_t t = table.suite_.size();

  auto pos = [](const auto& v, const auto& x) {
    return static_cast<std::size_t>(
        std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };

  std::vector<Cell> cells(t * n * a);
  std::vector<char> filled(cells.size(), 0);
  for (const auto& r : records) {
    const std::size_t ti = pos(datasets, r.dataset) * metrics.size() +
                           pos(metrics, r.metric);
    const std::size_t k =
        (ti * n + pos(table.seeds_, r.seed)) * a + pos(table.algorithms_, r.algorithm);
    if (filled[k]) {
      diags.push_back("duplicate record for " + r.algorithm + " on " +
                      r.dataset + "/" + r.metric + " seed " +
                      std::to_string(r.seed));
      continue;
    }
    filled[k] = 1;
    cells[k] = Cell{r.value, r.status};
  }

  // Completeness.
  std::vector<char> test_complete(t, 1);
  std::vector<std::string> missing;
  for (std::size_t ti = 0; ti < t; ++ti) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < a; ++i) {
        if (filled[(ti * n + s) * a + i]) continue;
        test_complete[ti] = 0;
        missing.push_back("missing cell: algorithm=" + table.algorithms_[i] +
                          " dataset=" + table.suite_[ti].dataset +
                          " metric=" + table.suite_[ti].metric +
                          " seed=" + std::to_string(table.seeds_[s]));
      }
    }
  }
  if (!missing.empty() && !options.drop_incomplete_tests) {
    diags.insert(diags.end(), missing.begin(), missing.end());
  }
  if (!diags.empty()) throw ValidationError(std::move(diags));

  if (!missing.empty()) {
    std::vector<TestId> kept_suite;
    std::vector<Cell> kept_cells;
    for (std::size_t ti = 0; ti < t; ++ti) {
      if (!test_complete[ti]) {
        if (warnings) {
          warnings->push_back("dropped incomplete test " +
                              to_string(table.suite_[ti]));
        }
        continue;
      }
      kept_suite.push_back(table.suite_[ti]);
      kept_cells.insert(kept_cells.end(), cells.begin() + ti * n * a,
                        cells.begin() + (ti + 1) * n * a);
    }
    table.suite_ = std::move(kept_suite);
    cells = std::move(kept_cells);
  }
  table.cells_ = std::move(cells);

  if (table.suite_.empty()) throw ValidationError({"table has no tests"});
  if (a < 2) {
    throw ValidationError({"need at least 2 algorithms, got " +
                           std::to_string(a)});
  }
  if (n < 1) throw ValidationError({"need at least 1 seed"});
  return table;
}

std::size_t ResultTable::index(std::size_t test, std::size_t seed,
                               std::size_t algorithm) const {
  return (test * seeds_.size() + seed) * algorithms_.size() + algorithm;
}

const Cell& ResultTable::cell(std::size_t test, std::size_t seed,
                              std::size_t algorithm) const {
  return cells_.at(index(test, seed, algorithm));
}

const MetricSpec& ResultTable::metric_of(std::size_t test) const {
  return registry_.at(suite_.at(test).metric);
}

std::vector<ResultRecord> ResultTable::records() const {
  std::vector<ResultRecord> out;
  out.reserve(cells_.size());
  for (std::size_t t = 0; t < suite_.size(); ++t) {
    for (std::size_t s = 0; s < seeds_.size(); ++s) {
      for (std::size_t i = 0; i < algorithms_.size(); ++i) {
        const Cell& c = cells_[index(t, s, i)];
        out.push_back(ResultRecord{algorithms_[i], suite_[t].dataset,
                                   suite_[t].metric, seeds_[s], c.value,
                                   c.status});
      }
    }
  }
  return out;
}

ResultTable ResultTable::with_cells(std::vector<Cell> cells) const {
  if (cells.size() != cells_.size()) {
    throw std::invalid_argument("with_cells: cell count mismatch");
  }
  ResultTable copy = *this;
  copy.cells_ = std::move(cells);
  return copy;
}

ResultTable ingest(std::istream& source, InputFormat format,
                   const MetricRegistry& registry, const TableOptions& options,
                   std::vector<std::string>* warnings) {
  std::vector<std::string> diags;
  auto records = format == InputFormat::kCsv ? read_csv_records(source, diags)
                                             : read_json_records(source, diags);
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return ResultTable::from_records(std::move(records), registry, options,
                                   warnings);
}

void write_csv(const ResultTable& table, std::ostream& out) {
  out << "algorithm,dataset,metric,seed,value,status\n";
  for (const auto& r : table.records()) {
    out << csv_escape(r.algorithm) << ',' << csv_escape(r.dataset) << ','
        << csv_escape(r.metric) << ',' << r.seed << ','
        << (r.value ? format_double(*r.value) : std::string()) << ','
        << to_string(r.status) << '\n';
  }
}

void write_json(const ResultTable& table, std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : table.records()) {
    nlohmann::ordered_json obj;
    obj["algorithm"] = r.algorithm;
    obj["dataset"] = r.dataset;
    obj["metric"] = r.metric;
    obj["seed"] = r.seed;
    obj["value"] = r.value ? nlohmann::ordered_json(*r.value) : nullptr;
    obj["status"] = std::string(to_string(r.status));
    doc.push_back(std::move(obj));
  }
  out << doc.dump(1) << '\n';
}

ResultTable resolve_failures(const ResultTable& table) {
  const std::size_t a = table.num_algorithms();
  const std::size_t n = table.num_seeds();
  std::vector<Cell> cells;
  cells.reserve(table.num_tests() * n * a);
  for (std::size_t t = 0; t < table.num_tests(); ++t) {
    const MetricSpec& spec = table.metric_of(t);
    const bool higher = spec.direction == Direction::kHigherBetter;
    double worst;
    if (spec.bounds) {
      worst = higher ? spec.bounds->lo : spec.bounds->hi;
    } else {
      std::optional<double> extreme;
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < a; ++i) {
          const Cell& c = table.cell(t, s, i);
          if (c.status != Status::kOk) continue;
          if (!extreme) {
            extreme = *c.value;
          } else {
            extreme = higher ? std::min(*extreme, *c.value)
                             : std::max(*extreme, *c.value);
          }
        }
      }
      worst = extreme ? (higher ? *extreme - 1.0 : *extreme + 1.0) : 0.0;
    }
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < a; ++i) {
        Cell c = table.cell(t, s, i);
        if (c.status != Status::kOk) c.value = worst;
        cells.push_back(c);
      }
    }
  }
  return table.with_cells(std::move(cells));
}

}  // namespace rankbench
