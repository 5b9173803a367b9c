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

#include "rankbench/concordance.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rankbench {
namespace {

// All sums below are kept in integers over doubled ranks; the largest term
// is about 48 n^2 a^3.
void check_capacity(std::size_t n, std::size_t a) {
  const long double bound = 48.0L * n * n * static_cast<long double>(a) * a * a;
  if (bound > 9.0e18L) {
    throw std::overflow_error("concordance: matrix too large (n=" +
                              std::to_string(n) + ", a=" + std::to_string(a) +
                              ")");
  }
}

struct IntegerSums {
  std::vector<std::int64_t> twice_rank_sums;  // 2 R_i
  std::int64_t tie_correction = 0;            // sum_j sum_i (t^3 - t)
};

IntegerSums integer_sums(const RankMatrix& m) {
  const std::size_t a = m.num_algorithms();
  const std::size_t n = m.num_seeds();
  if (a < 2) throw std::invalid_argument("concordance: need a >= 2");
  if (n < 1) throw std::invalid_argument("concordance: need n >= 1");
  check_capacity(n, a);
  IntegerSums sums;
  sums.twice_rank_sums.assign(a, 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < a; ++i) {
      sums.twice_rank_sums[i] += m.at(s, i).twice();
    }
    for (std::size_t t : m.tie_groups(s)) {
      const auto tt = static_cast<std::int64_t>(t);
      sums.tie_correction += tt * tt * tt - tt;
    }
  }
  return sums;
}

ConcordanceStats base_stats(const RankMatrix& m, const IntegerSums& sums,
                            std::int64_t four_s) {
  ConcordanceStats st;
  st.test = m.test();
  for (std::int64_t r2 : sums.twice_rank_sums) {
    st.rank_sums.push_back(static_cast<double>(r2) / 2.0);
  }
  st.deviation_sum = static_cast<double>(four_s) / 4.0;
  st.tie_correction = static_cast<double>(sums.tie_correction);
  return st;
}

std::int64_t four_times_deviation_sum(const IntegerSums& sums, std::int64_t n,
                                      std::int64_t a) {
  // 2 (R_i - n(a+1)/2) = 2R_i - n(a+1) is an integer.
  std::int64_t four_s = 0;
  for (std::int64_t r2 : sums.twice_rank_sums) {
    const std::int64_t d = r2 - n * (a + 1);
    four_s += d * d;
  }
  return four_s;
}

}  // namespace

ConcordanceStats kendall_w_test(const RankMatrix& matrix) {
  const IntegerSums sums = integer_sums(matrix);
  const auto n = static_cast<std::int64_t>(matrix.num_seeds());
  const auto a = static_cast<std::int64_t>(matrix.num_algorithms());
  const std::int64_t four_s = four_times_deviation_sum(sums, n, a);
  ConcordanceStats st = base_stats(matrix, sums, four_s);
  // 12 S / (n^2 (a^3 - a)) = 3 (4S) / (n^2 (a^3 - a))
  st.per_test_w = static_cast<double>(3 * four_s) /
                  static_cast<double>(n * n * (a * a * a - a));
  return st;
}

ConcordanceStats kendall_w_tied_test(const RankMatrix& matrix) {
  if (matrix.policy() != TiePolicy::kMeanOfTied) {
    throw std::invalid_argument(
        "tie-corrected W requires mean-of-tied ranks (" +
        to_string(matrix.test()) + ")");
  }
  const IntegerSums sums = integer_sums(matrix);
  const auto n = static_cast<std::int64_t>(matrix.num_seeds());
  const auto a = static_cast<std::int64_t>(matrix.num_algorithms());
  ConcordanceStats st =
      base_stats(matrix, sums, four_times_deviation_sum(sums, n, a));

  // 12 sum R^2 = 3 sum (2R)^2, so the numerator is an exact integer.
  std::int64_t sum_sq = 0;
  for (std::int64_t r2 : sums.twice_rank_sums) sum_sq += r2 * r2;
  const std::int64_t numerator = 3 * sum_sq - 3 * n * n * a * (a + 1) * (a + 1);
  const std::int64_t denominator =
      n * n * a * (a * a - 1) - n * sums.tie_correction;
  if (denominator == 0) {
    st.per_test_w = 1.0;
    st.degenerate = true;
  } else {
    st.per_test_w =
        static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  return st;
}

CoefficientResult w_randomness(std::span<const RankMatrix> matrices,
                               bool tied) {
  if (matrices.empty()) throw std::invalid_argument("w_randomness: empty suite");
  CoefficientResult result;
  result.coefficient = tied ? Coefficient::kWTied : Coefficient::kW;
  result.policy = matrices.front().policy();
  std::vector<double> values;
  values.reserve(matrices.size());
  bool mixed = false;
  for (const auto& m : matrices) {
    mixed = mixed || m.policy() != result.policy;
    const ConcordanceStats st =
        tied ? kendall_w_tied_test(m) : kendall_w_test(m);
    if (st.degenerate) {
      result.warnings.push_back(
          "w_tied: " + to_string(m.test()) +
          " has every algorithm tied on every seed; concordance set to 1");
    }
    if (st.per_test_w < 0.0 || st.per_test_w > 1.0) {
      result.warnings.push_back(
          std::string(to_string(result.coefficient)) + ": " +
          to_string(m.test()) + " per-test W " + format_double(st.per_test_w) +
          " is outside [0,1] (lowest-rank ties do not conserve rank sums)");
    }
    values.push_back(st.per_test_w);
    result.per_test.push_back(PerTestValue{m.test(), st.per_test_w});
  }
  if (mixed) throw std::invalid_argument("w_randomness: mixed tie policies");
  if (!tied && result.policy == TiePolicy::kLowestSharedRank &&
      count_ties(matrices) > 0) {
    result.warnings.push_back(
        "w: computed on lowest-rank ties; rank sums are not conserved, so "
        "the textbook [0,1] range of W is not guaranteed");
  }
  result.value = randomness_from_agreement(values);
  return result;
}

}  // namespace rankbench
