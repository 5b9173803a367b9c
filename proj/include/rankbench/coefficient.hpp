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

// Shared result shape for the suite-level randomness coefficients.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankbench/ranking.hpp"
#include "rankbench/result_model.hpp"

namespace rankbench {

enum class Coefficient { kW, kWTied, kWWasserstein };

// "w", "w_tied", "w_wasserstein".
std::string_view to_string(Coefficient c);
Coefficient parse_coefficient(std::string_view text);

struct PerTestValue {
  TestId test;
  // Per-test agreement in [0,1] for valid input: 1 means every seed
  // produced the same ranking (W) or the rank distributions do not
  // overlap (W_w). The suite coefficient is 1 - mean of these.
  double value = 0.0;
};

struct CoefficientResult {
  Coefficient coefficient = Coefficient::kW;
  TiePolicy policy = TiePolicy::kMeanOfTied;
  double value = 0.0;
  std::vector<PerTestValue> per_test;
  std::vector<std::string> warnings;
};

// 1 - arithmetic mean, summed in the given order. Throws on empty input.
double randomness_from_agreement(std::span<const double> per_test);

}  // namespace rankbench
