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

// Framework Comparison Rank: head-to-head ranking of evaluation regimes
// (say, default hyperparameters vs tuned ones) over the same result grid.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankbench/result_model.hpp"

namespace rankbench {

struct FrameworkResult {
  std::string label;
  ResultTable table;
};

enum class Granularity {
  // One unit per (algorithm, dataset, metric); seed-mean scores.
  kPerAlgorithmTest,
  // One unit per (dataset, metric); mean over seeds and algorithms.
  kPerTest,
};

std::string_view to_string(Granularity g);
Granularity parse_granularity(std::string_view text);

struct FcrResult {
  Granularity granularity = Granularity::kPerAlgorithmTest;
  std::size_t units = 0;
  std::vector<std::string> labels;
  // Mean rank per framework, in input order.
  std::vector<double> fcr;
  // Twice the summed rank per framework; fcr[k] = twice_rank_totals[k] /
  // (2 * units) exactly.
  std::vector<std::int64_t> twice_rank_totals;
};

// Frameworks are ranked 1..f on every unit with mean-of-tied ranks and the
// metric's direction; the FCR is the mean rank over units. Failed runs are
// scored as worst values before averaging. Throws std::invalid_argument on
// fewer than two frameworks, duplicate labels, or mismatched grids.
FcrResult fcr(std::span<const FrameworkResult> frameworks,
              Granularity granularity = Granularity::kPerAlgorithmTest);

}  // namespace rankbench
