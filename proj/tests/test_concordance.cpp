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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rankbench/concordance.hpp"

using namespace rankbench;

namespace {

RankMatrix mean_matrix(const oracle::Rows& rows, std::string dataset = "d") {
  return make_rank_matrix({std::move(dataset), "m"}, rows, TiePolicy::kMeanOfTied);
}

oracle::Rows random_perm_rows(std::size_t n, std::size_t a, std::mt19937_64& gen) {
  oracle::Rows rows;
  for (std::size_t s = 0; s < n; ++s) {
    rows.push_back(oracle::random_permutation_ranks(a, gen));
  }
  return rows;
}

oracle::Rows random_tied_rows(std::size_t n, std::size_t a, std::mt19937_64& gen) {
  oracle::Rows rows;
  for (std::size_t s = 0; s < n; ++s) {
    rows.push_back(oracle::count_ranks(oracle::random_scores(a, 3, gen), true, true));
  }
  return rows;
}

}  // namespace

TEST_CASE("kendall_w_test: perfect concordance") {
  const auto st = kendall_w_test(mean_matrix({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}));
  CHECK(st.rank_sums == std::vector<double>{3, 6, 9});
  CHECK(st.deviation_sum == 18.0);
  CHECK(st.per_test_w == 1.0);
}

TEST_CASE("kendall_w_test: complete disagreement") {
  const auto st = kendall_w_test(mean_matrix({{1, 2}, {2, 1}}));
  CHECK(st.rank_sums == std::vector<double>{3, 3});
  CHECK(st.deviation_sum == 0.0);
  CHECK(st.per_test_w == 0.0);
}

TEST_CASE("kendall_w_test: hand-evaluated mixed example") {
  const oracle::Rows rows{{1, 2, 3}, {2, 1, 3}, {1, 2, 3}};
  // R = (4, 5, 9), mean 6, S = 4 + 1 + 9 = 14, W = 12*14 / (9*24).
  const auto st = kendall_w_test(mean_matrix(rows));
  CHECK(st.rank_sums == std::vector<double>{4, 5, 9});
  CHECK(st.deviation_sum == 14.0);
  CHECK(st.per_test_w == doctest::Approx(168.0 / 216.0).epsilon(1e-15));
  CHECK(std::abs(oracle::kendall_w_deviation(rows) - st.per_test_w) < 1e-12);
}

TEST_CASE("kendall_w_tied_test: hand-evaluated tie correction") {
  const oracle::Rows rows{{1.5, 1.5, 3}, {1, 2, 3}, {1, 2, 3}};
  const auto st = kendall_w_tied_test(mean_matrix(rows));
  CHECK(st.rank_sums == std::vector<double>{3.5, 5.5, 9});
  CHECK(st.tie_correction == 6.0);
  CHECK(std::abs(st.per_test_w - 186.0 / 198.0) < 1e-12);
  CHECK(std::abs(oracle::kendall_w_tied_textbook(rows) - 186.0 / 198.0) < 1e-12);
  CHECK_FALSE(st.degenerate);
}

TEST_CASE("kendall_w_tied_test: fully tied rows use the convention") {
  const auto st = kendall_w_tied_test(mean_matrix({{2, 2, 2}, {2, 2, 2}}));
  CHECK(st.per_test_w == 1.0);
  CHECK(st.degenerate);
  const std::vector<RankMatrix> ms{mean_matrix({{2, 2, 2}, {2, 2, 2}})};
  const auto r = w_randomness(ms, true);
  CHECK(r.value == 0.0);
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("kendall_w_tied_test rejects lowest-rank input") {
  const auto m =
      make_rank_matrix({"d", "m"}, {{1, 1, 3}}, TiePolicy::kLowestSharedRank);
  CHECK_THROWS_AS(kendall_w_tied_test(m), std::invalid_argument);
  CHECK_NOTHROW(kendall_w_test(m));
}

TEST_CASE("w_randomness aggregates in suite order") {
  const std::vector<RankMatrix> ms{
      mean_matrix({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}, "a"),
      mean_matrix({{1, 2, 3}, {2, 1, 3}, {1, 2, 3}}, "b")};
  const auto r = w_randomness(ms, false);
  CHECK(std::abs(r.value - 1.0 / 9.0) < 1e-12);
  REQUIRE(r.per_test.size() == 2);
  CHECK(r.per_test[0].test.dataset == "a");
  CHECK(r.per_test[0].value == 1.0);
  CHECK(r.warnings.empty());

  const std::vector<RankMatrix> all_same{ms[0], ms[0]};
  CHECK(w_randomness(all_same, false).value == 0.0);
  CHECK_THROWS_AS(w_randomness(std::span<const RankMatrix>(), false),
                  std::invalid_argument);
}

TEST_CASE("lowest-rank W is allowed but flagged") {
  // All tied at 1 under competition ranking: R = (n,n,n), S = 3n^2, W = 1.5.
  const std::vector<RankMatrix> ms{make_rank_matrix(
      {"d", "m"}, {{1, 1, 1}, {1, 1, 1}}, TiePolicy::kLowestSharedRank)};
  const auto r = w_randomness(ms, false);
  CHECK(r.per_test[0].value == 1.5);
  CHECK(r.value == -0.5);
  CHECK(r.warnings.size() == 2);
}

TEST_CASE("single seed with distinct ranks has W = 1") {
  std::mt19937_64 gen(5);
  for (std::size_t a = 2; a <= 12; ++a) {
    const auto st = kendall_w_test(mean_matrix(random_perm_rows(1, a, gen)));
    const double ad = static_cast<double>(a);
    CHECK(st.deviation_sum == (ad * ad * ad - ad) / 12.0);
    CHECK(st.per_test_w == 1.0);
  }
}

TEST_CASE("oracle equivalence on permutation rows (property)") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t a = 2 + trial % 4;
    const std::size_t n = 1 + (trial / 4) % 4;
    const auto rows = random_perm_rows(n, a, gen);
    const auto st = kendall_w_test(mean_matrix(rows));
    REQUIRE(std::abs(st.per_test_w - oracle::kendall_w_deviation(rows)) < 1e-12);
    // No ties: the corrected form is the same number.
    REQUIRE(std::abs(kendall_w_tied_test(mean_matrix(rows)).per_test_w -
                     st.per_test_w) < 1e-12);
  }
}

TEST_CASE("tied W matches the textbook form on tied rows (property)") {
  std::mt19937_64 gen(77);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t a = 2 + trial % 5;
    const std::size_t n = 1 + (trial / 5) % 4;
    const auto rows = random_tied_rows(n, a, gen);
    const auto st = kendall_w_tied_test(mean_matrix(rows));
    if (st.degenerate) continue;
    ++checked;
    REQUIRE(std::abs(st.per_test_w - oracle::kendall_w_tied_textbook(rows)) < 1e-12);
    REQUIRE(st.per_test_w >= -1e-15);
    REQUIRE(st.per_test_w <= 1.0 + 1e-15);
    // Mean-tie rank sums are conserved.
    double total = 0.0;
    for (double r : st.rank_sums) total += r;
    REQUIRE(total == static_cast<double>(n * a * (a + 1)) / 2.0);
  }
  CHECK(checked > 1500);
}

TEST_CASE("seed and algorithm relabeling invariance (property)") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t a = 2 + trial % 6;
    const std::size_t n = 1 + trial % 5;
    auto rows = random_tied_rows(n, a, gen);
    const auto base = mean_matrix(rows);
    const double w = kendall_w_test(base).per_test_w;
    const double wt = kendall_w_tied_test(base).per_test_w;

    std::shuffle(rows.begin(), rows.end(), gen);
    std::vector<std::size_t> perm(a);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    oracle::Rows relabeled;
    for (const auto& row : rows) {
      std::vector<double> r(a);
      for (std::size_t i = 0; i < a; ++i) r[i] = row[perm[i]];
      relabeled.push_back(r);
    }
    const auto moved = mean_matrix(relabeled);
    CHECK(kendall_w_test(moved).per_test_w == w);
    CHECK(kendall_w_tied_test(moved).per_test_w == wt);
  }
}
