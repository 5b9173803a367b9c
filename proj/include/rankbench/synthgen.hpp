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

// Synthetic result tables with controllable seed noise, ties and failures.

#pragma once

#include <cstdint>

#include "rankbench/result_model.hpp"

namespace rankbench {

struct SynthConfig {
  int n_algorithms = 5;
  int n_datasets = 11;
  int n_metrics = 4;
  int n_seeds = 10;
  // Distance between adjacent algorithms' base scores; algorithm 0 is best.
  double quality_gap = 0.5;
  // Per-seed additive noise, uniform in [-noise_scale, +noise_scale].
  double noise_scale = 0.0;
  // Chance a score is snapped to a grid of quarter steps of the test's
  // score range.
  double tie_prob = 0.0;
  // Chance a record becomes an out-of-memory failure with no value.
  double fail_prob = 0.0;
  std::uint64_t rng_seed = 0;
};

// Throws std::invalid_argument naming the offending field.
void validate(const SynthConfig& config);

// Even-numbered metrics are higher-is-better, odd-numbered ones
// lower-is-better (reported as an offset minus the score, so values stay
// non-negative). The random draw sequence does not depend on the scale
// parameters, so sweeping noise_scale reuses the same underlying draws.
ResultTable generate(const SynthConfig& config);

}  // namespace rankbench
