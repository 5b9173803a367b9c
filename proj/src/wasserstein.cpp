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

#include "rankbench/wasserstein.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankbench {
namespace {

// Sum over k of |2 s1[k] - 2 s2[k]| for sorted equal-length samples.
std::int64_t twice_sorted_l1(const std::vector<Rank>& s1,
                             const std::vector<Rank>& s2) {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < s1.size(); ++k) {
    const std::int64_t d = s1[k].twice() - s2[k].twice();
    total += d < 0 ? -d : d;
  }
  return total;
}

}  // namespace

RankDistribution::RankDistribution(TestId test, std::string algorithm,
                                   std::vector<Rank> samples)
    : test_(std::move(test)),
      algorithm_(std::move(algorithm)),
      samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw std::invalid_argument("RankDistribution: no samples");
  }
  std::sort(samples_.begin(), samples_.end());
}

double RankDistribution::cdf(double r) const {
  const auto below = std::count_if(samples_.begin(), samples_.end(),
                                   [r](Rank s) { return s.value() <= r; });
  return static_cast<double>(below) / static_cast<double>(samples_.size());
}

RankDistribution rank_distribution(const RankMatrix& matrix,
                                   std::size_t algorithm,
                                   std::string algorithm_name) {
  if (algorithm_name.empty()) algorithm_name = "#" + std::to_string(algorithm);
  return RankDistribution(matrix.test(), std::move(algorithm_name),
                          matrix.column(algorithm));
}

double w1_distance(const RankDistribution& d1, const RankDistribution& d2) {
  if (d1.size() != d2.size()) {
    throw std::invalid_argument("w1_distance: unequal sample counts (" +
                                std::to_string(d1.size()) + " vs " +
                                std::to_string(d2.size()) + ")");
  }
  if (d1.test() != d2.test()) {
    throw std::invalid_argument("w1_distance: distributions from different tests");
  }
  return static_cast<double>(twice_sorted_l1(d1.samples(), d2.samples())) /
         (2.0 * static_cast<double>(d1.size()));
}

std::int64_t wasserstein_normalizer(std::int64_t a) {
  if (a < 2) return 0;
  return a * (a - 1) * (a + 1) / 6;
}

double ww_test(const RankMatrix& matrix) {
  const std::size_t a = matrix.num_algorithms();
  const std::size_t n = matrix.num_seeds();
  if (a < 2) throw std::invalid_argument("ww_test: need a >= 2");
  if (n < 1) throw std::invalid_argument("ww_test: need n >= 1");

  std::vector<std::vector<Rank>> sorted(a);
  for (std::size_t i = 0; i < a; ++i) {
    sorted[i] = matrix.column(i);
    std::sort(sorted[i].begin(), sorted[i].end());
  }
  // Each W1 is twice_l1 / (2n); sum them as integers and divide once.
  std::int64_t twice_total = 0;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      twice_total += twice_sorted_l1(sorted[i], sorted[j]);
    }
  }
  const auto norm = wasserstein_normalizer(static_cast<std::int64_t>(a));
  return static_cast<double>(twice_total) /
         (2.0 * static_cast<double>(n) * static_cast<double>(norm));
}

CoefficientResult ww_randomness(std::span<const RankMatrix> matrices) {
  if (matrices.empty()) {
    throw std::invalid_argument("ww_randomness: empty suite");
  }
  CoefficientResult result;
  result.coefficient = Coefficient::kWWasserstein;
  result.policy = matrices.front().policy();
  std::vector<double> values;
  values.reserve(matrices.size());
  for (const auto& m : matrices) {
    if (m.policy() != result.policy) {
      throw std::invalid_argument("ww_randomness: mixed tie policies");
    }
    const double v = ww_test(m);
    if (v > 1.0) {
      result.warnings.push_back(
          "w_wasserstein: " + to_string(m.test()) + " overlap ratio " +
          format_double(v) + " exceeds 1 (ranks are not a permutation)");
    }
    values.push_back(v);
    result.per_test.push_back(PerTestValue{m.test(), v});
  }
  result.value = randomness_from_agreement(values);
  return result;
}

}  // namespace rankbench
