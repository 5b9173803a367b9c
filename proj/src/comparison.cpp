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

#include "rankbench/comparison.hpp"

#include <set>
#include <stdexcept>

#include "rankbench/ranking.hpp"

namespace rankbench {
namespace {

double seed_mean(const ResultTable& table, std::size_t test,
                 std::size_t algorithm) {
  double sum = 0.0;
  for (std::size_t s = 0; s < table.num_seeds(); ++s) {
    sum += *table.cell(test, s, algorithm).value;
  }
  return sum / static_cast<double>(table.num_seeds());
}

void check_shared_grid(std::span<const FrameworkResult> frameworks) {
  if (frameworks.size() < 2) {
    throw std::invalid_argument("fcr: need at least two frameworks");
  }
  std::set<std::string> labels;
  const ResultTable& ref = frameworks.front().table;
  for (const auto& f : frameworks) {
    if (!labels.insert(f.label).second) {
      throw std::invalid_argument("fcr: duplicate framework label '" +
                                  f.label + "'");
    }
    if (f.table.algorithms() != ref.algorithms()) {
      throw std::invalid_argument("fcr: framework '" + f.label +
                                  "' has a different algorithm list");
    }
    if (f.table.suite() != ref.suite()) {
      throw std::invalid_argument("fcr: framework '" + f.label +
                                  "' has a different test suite");
    }
    if (!(f.table.registry() == ref.registry())) {
      throw std::invalid_argument("fcr: framework '" + f.label +
                                  "' has a different metric registry");
    }
  }
  if (ref.suite().empty()) throw std::invalid_argument("fcr: empty suite");
}

}  // namespace

std::string_view to_string(Granularity g) {
  return g == Granularity::kPerAlgorithmTest ? "per-algorithm-test"
                                             : "per-test";
}

Granularity parse_granularity(std::string_view text) {
  if (text == "per-algorithm-test") return Granularity::kPerAlgorithmTest;
  if (text == "per-test") return Granularity::kPerTest;
  throw std::invalid_argument(
      "granularity must be per-algorithm-test or per-test, got '" +
      std::string(text) + "'");
}

FcrResult fcr(std::span<const FrameworkResult> frameworks,
              Granularity granularity) {
  check_shared_grid(frameworks);
  const std::size_t f = frameworks.size();

  std::vector<ResultTable> resolved;
  resolved.reserve(f);
  for (const auto& fw : frameworks) resolved.push_back(resolve_failures(fw.table));

  FcrResult out;
  out.granularity = granularity;
  for (const auto& fw : frameworks) out.labels.push_back(fw.label);
  out.twice_rank_totals.assign(f, 0);

  const ResultTable& ref = resolved.front();
  std::vector<double> scores(f);
  auto rank_unit = [&](Direction direction) {
    const RankedRow row =
        rank_row(scores, direction, TiePolicy::kMeanOfTied, 0.0);
    for (std::size_t k = 0; k < f; ++k) {
      out.twice_rank_totals[k] += row.ranks[k].twice();
    }
    ++out.units;
  };

  for (std::size_t t = 0; t < ref.num_tests(); ++t) {
    const Direction direction = ref.metric_of(t).direction;
    if (granularity == Granularity::kPerAlgorithmTest) {
      for (std::size_t i = 0; i < ref.num_algorithms(); ++i) {
        for (std::size_t k = 0; k < f; ++k) {
          scores[k] = seed_mean(resolved[k], t, i);
        }
        rank_unit(direction);
      }
    } else {
      for (std::size_t k = 0; k < f; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < ref.num_algorithms(); ++i) {
          sum += seed_mean(resolved[k], t, i);
        }
        scores[k] = sum / static_cast<double>(ref.num_algorithms());
      }
      rank_unit(direction);
    }
  }

  for (std::int64_t total : out.twice_rank_totals) {
    out.fcr.push_back(static_cast<double>(total) /
                      (2.0 * static_cast<double>(out.units)));
  }
  return out;
}

}  // namespace rankbench
