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

// JSON fragments for run reports. Key order is fixed so identical runs
// serialize to identical bytes.

#pragma once

#include <optional>
#include <span>

#include "json.hpp"
#include "rankbench/coefficient.hpp"
#include "rankbench/comparison.hpp"
#include "rankbench/ranking.hpp"
#include "rankbench/resampling.hpp"

namespace rankbench {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "rankbench";
inline constexpr const char* kToolVersion = "1.0.0";

// {"coefficient", "tie_policy", "value", "per_test": [{"dataset", "metric",
// "w"}], "n_ties"?}
Json to_json(const CoefficientResult& result,
             std::optional<std::size_t> n_ties = std::nullopt);

// {"fcr": {label: value}, "units", "granularity"}
Json to_json(const FcrResult& result);

Json to_json(const ConvergenceReport& report);

Json to_json(const MetricRegistry& registry);

Json to_json(std::span<const RankMatrix> matrices, const ResultTable& table);

}  // namespace rankbench
