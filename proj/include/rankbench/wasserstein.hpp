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

// Randomness measured as overlap between per-algorithm rank distributions.
//
// For each test every algorithm has an empirical distribution of ranks over
// seeds. Pairwise Wasserstein-1 distances between those distributions are
// summed and divided by the sum obtained when every seed gives the same
// permutation ranking (no overlap at all), a(a-1)(a+1)/6. The suite value is
// one minus the mean of that ratio over tests.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankbench/coefficient.hpp"
#include "rankbench/ranking.hpp"

namespace rankbench {

// The ranks one algorithm received on one test, one per seed. Kept sorted.
class RankDistribution {
 public:
  RankDistribution(TestId test, std::string algorithm,
                   std::vector<Rank> samples);

  const TestId& test() const { return test_; }
  const std::string& algorithm() const { return algorithm_; }
  const std::vector<Rank>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  // F(r): fraction of samples <= r.
  double cdf(double r) const;

 private:
  TestId test_;
  std::string algorithm_;
  std::vector<Rank> samples_;
};

RankDistribution rank_distribution(const RankMatrix& matrix,
                                   std::size_t algorithm,
                                   std::string algorithm_name = {});

// Integral of |F_1 - F_2|, evaluated as the mean absolute difference of the
// sorted samples. Throws std::invalid_argument on unequal sample counts.
double w1_distance(const RankDistribution& d1, const RankDistribution& d2);

// a(a-1)(a+1)/6; 0 for a < 2.
std::int64_t wasserstein_normalizer(std::int64_t a);

// Summed pairwise W1 over the normalizer. 1 when every seed produces the
// same permutation ranking, 0 when every algorithm has the same rank
// distribution.
double ww_test(const RankMatrix& matrix);

CoefficientResult ww_randomness(std::span<const RankMatrix> matrices);

}  // namespace rankbench
