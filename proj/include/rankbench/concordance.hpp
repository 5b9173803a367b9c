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

// Kendall's coefficient of concordance over seeds, per test, and the
// randomness coefficients built from it.

#pragma once

#include <span>
#include <vector>

#include "rankbench/coefficient.hpp"
#include "rankbench/ranking.hpp"

namespace rankbench {

struct ConcordanceStats {
  TestId test;
  // R_i: sum over seeds of algorithm i's rank.
  std::vector<double> rank_sums;
  // S = sum_i (R_i - n(a+1)/2)^2.
  double deviation_sum = 0.0;
  // sum over seeds and tied groups of t^3 - t.
  double tie_correction = 0.0;
  double per_test_w = 0.0;
  // Tie-corrected denominator was zero (every seed ties every algorithm);
  // per_test_w was set to 1.
  bool degenerate = false;
};

// W = 12 S / (n^2 (a^3 - a)). Accepts either tie policy; under
// LowestSharedRank rank sums are not conserved and W can leave [0,1].
ConcordanceStats kendall_w_test(const RankMatrix& matrix);

// W_t = (12 sum R_i^2 - 3 n^2 a (a+1)^2) /
//       (n^2 a (a^2 - 1) - n sum_j sum_i (t_i^3 - t_i)).
// Requires mean-of-tied ranks.
ConcordanceStats kendall_w_tied_test(const RankMatrix& matrix);

// 1 - mean per-test W (or W_t when `tied`), in matrix order.
CoefficientResult w_randomness(std::span<const RankMatrix> matrices,
                               bool tied);

}  // namespace rankbench
