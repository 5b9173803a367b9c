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

#include "rankbench/report.hpp"

namespace rankbench {

Json to_json(const CoefficientResult& result, std::optional<std::size_t> n_ties) {
  Json j;
  j["coefficient"] = std::string(to_string(result.coefficient));
  j["tie_policy"] = std::string(to_string(result.policy));
  j["value"] = result.value;
  Json per_test = Json::array();
  for (const auto& pt : result.per_test) {
    per_test.push_back(
        Json{{"dataset", pt.test.dataset}, {"metric", pt.test.metric}, {"w", pt.value}});
  }
  j["per_test"] = std::move(per_test);
  if (n_ties) j["n_ties"] = *n_ties;
  return j;
}

Json to_json(const FcrResult& result) {
  Json values = Json::object();
  for (std::size_t k = 0; k < result.labels.size(); ++k) {
    values[result.labels[k]] = result.fcr[k];
  }
  Json j;
  j["fcr"] = std::move(values);
  j["units"] = result.units;
  j["granularity"] = std::string(to_string(result.granularity));
  return j;
}

Json to_json(const ConvergenceReport& report) {
  Json j;
  j["sizes"] = report.sizes;
  j["repeats"] = report.repeats;
  j["suite_size"] = report.suite_size;
  j["rng_seed"] = report.rng_seed;
  j["rng_algorithm"] = report.rng_algorithm;
  j["provenance"] = report.provenance;
  Json full = Json::object();
  for (std::size_t c = 0; c < report.coefficients.size(); ++c) {
    full[std::string(to_string(report.coefficients[c]))] =
        report.full_suite_values[c];
  }
  j["full_suite"] = std::move(full);
  Json cells = Json::array();
  for (const auto& cell : report.cells) {
    cells.push_back(Json{{"size", cell.size},
                         {"coefficient", std::string(to_string(cell.coefficient))},
                         {"mean", cell.mean},
                         {"std", cell.std},
                         {"values", cell.values}});
  }
  j["cells"] = std::move(cells);
  return j;
}

Json to_json(const MetricRegistry& registry) {
  Json arr = Json::array();
  for (const auto& m : registry.metrics()) {
    Json j;
    j["name"] = m.name;
    j["direction"] = m.direction == Direction::kHigherBetter ? "higher" : "lower";
    j["bounds"] = m.bounds ? Json::array({m.bounds->lo, m.bounds->hi}) : Json();
    arr.push_back(std::move(j));
  }
  return arr;
}

Json to_json(std::span<const RankMatrix> matrices, const ResultTable& table) {
  Json arr = Json::array();
  for (const auto& m : matrices) {
    Json ranks = Json::array();
    Json ties = Json::array();
    for (std::size_t s = 0; s < m.num_seeds(); ++s) {
      Json row = Json::array();
      for (Rank r : m.row(s)) row.push_back(r.value());
      ranks.push_back(std::move(row));
      ties.push_back(m.tie_groups(s));
    }
    arr.push_back(Json{{"dataset", m.test().dataset},
                       {"metric", m.test().metric},
                       {"seeds", table.seeds()},
                       {"algorithms", table.algorithms()},
                       {"ranks", std::move(ranks)},
                       {"tie_groups", std::move(ties)}});
  }
  return arr;
}

}  // namespace rankbench
