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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rankbench/wasserstein.hpp"

using namespace rankbench;

namespace {

const TestId kTest{"d", "m"};

RankDistribution dist(std::vector<double> ranks) {
  std::vector<Rank> samples;
  for (double r : ranks) samples.push_back(Rank::from_twice(std::llround(2 * r)));
  return RankDistribution(kTest, "x", std::move(samples));
}

// Random multiset of n half-integer ranks in [1, a].
std::vector<double> random_ranks(std::size_t n, std::size_t a, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> d(2, static_cast<int>(2 * a));
  std::vector<double> out(n);
  for (auto& r : out) r = d(gen) / 2.0;
  return out;
}

}  // namespace

TEST_CASE("w1_distance examples") {
  CHECK(w1_distance(dist({1, 1}), dist({2, 2})) == 1.0);
  CHECK(w1_distance(dist({3, 1, 2}), dist({2, 3, 1})) == 0.0);
  // CDF differs by 1/2 on [1,2) and on [2,3).
  CHECK(w1_distance(dist({1, 3}), dist({2, 2})) == 1.0);
  CHECK(oracle::w1_cdf_integral({1, 3}, {2, 2}) == 1.0);
}

TEST_CASE("w1_distance rejects unequal sample counts") {
  CHECK_THROWS_AS(w1_distance(dist({1, 2}), dist({1, 2, 3})), std::invalid_argument);
  const RankDistribution other({"e", "m"}, "y", {Rank::whole(1)});
  CHECK_THROWS_AS(w1_distance(dist({1}), other), std::invalid_argument);
}

TEST_CASE("cdf is a right-continuous step function") {
  const auto d = dist({1, 2.5, 2.5, 4});
  CHECK(d.cdf(0.99) == 0.0);
  CHECK(d.cdf(1.0) == 0.25);
  CHECK(d.cdf(2.5) == 0.75);
  CHECK(d.cdf(3.9) == 0.75);
  CHECK(d.cdf(4.0) == 1.0);
}

TEST_CASE("quantile formula equals CDF breakpoint integration (property)") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const std::size_t a = 2 + trial % 7;
    const auto s1 = random_ranks(n, a, gen);
    const auto s2 = random_ranks(n, a, gen);
    REQUIRE(std::abs(w1_distance(dist(s1), dist(s2)) -
                     oracle::w1_cdf_integral(s1, s2)) < 1e-12);
  }
}

TEST_CASE("w1 metric axioms (property)") {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const std::size_t a = 2 + trial % 7;
    const auto x = dist(random_ranks(n, a, gen));
    const auto y = dist(random_ranks(n, a, gen));
    const auto z = dist(random_ranks(n, a, gen));
    CHECK(w1_distance(x, y) == w1_distance(y, x));
    CHECK(w1_distance(x, x) == 0.0);
    CHECK((w1_distance(x, y) == 0.0) == (x.samples() == y.samples()));
    CHECK(w1_distance(x, z) <= w1_distance(x, y) + w1_distance(y, z) + 1e-12);
  }
}

TEST_CASE("normalizer identity") {
  for (std::int64_t a = 2; a <= 100; ++a) {
    CHECK(wasserstein_normalizer(a) == oracle::normalizer_sum(a));
    CHECK(wasserstein_normalizer(a) == oracle::pairwise_rank_gaps(a));
  }
  CHECK(wasserstein_normalizer(1) == 0);
}

TEST_CASE("ww_test examples") {
  const auto separated = make_rank_matrix(
      kTest, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}}, TiePolicy::kMeanOfTied);
  CHECK(ww_test(separated) == 1.0);

  // Every algorithm has the rank distribution {1, 2, 3}.
  const auto latin = make_rank_matrix(kTest, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}},
                                      TiePolicy::kMeanOfTied);
  CHECK(ww_test(latin) == 0.0);

  const auto swapped =
      make_rank_matrix(kTest, {{1, 2}, {2, 1}}, TiePolicy::kMeanOfTied);
  CHECK(ww_test(swapped) == 0.0);
}

TEST_CASE("ww_test agrees with pairwise w1 over rank distributions") {
  std::mt19937_64 gen(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t a = 2 + trial % 6;
    const std::size_t n = 1 + trial % 7;
    oracle::Rows rows;
    for (std::size_t s = 0; s < n; ++s) {
      rows.push_back(oracle::count_ranks(oracle::random_scores(a, 3, gen), true, true));
    }
    const auto m = make_rank_matrix(kTest, rows, TiePolicy::kMeanOfTied);
    double pairwise = 0.0;
    for (std::size_t i = 0; i < a; ++i) {
      std::vector<double> ci;
      for (const auto& r : rows) ci.push_back(r[i]);
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<double> cj;
        for (const auto& r : rows) cj.push_back(r[j]);
        pairwise += oracle::w1_cdf_integral(ci, cj);
      }
    }
    const double expected =
        pairwise / static_cast<double>(oracle::normalizer_sum(static_cast<std::int64_t>(a)));
    REQUIRE(std::abs(ww_test(m) - expected) < 1e-12);
    REQUIRE(ww_test(m) >= 0.0);
    REQUIRE(ww_test(m) <= 1.0);

    // Row order never matters.
    std::shuffle(rows.begin(), rows.end(), gen);
    REQUIRE(ww_test(make_rank_matrix(kTest, rows, TiePolicy::kMeanOfTied)) == ww_test(m));
  }
}

TEST_CASE("ww_randomness") {
  const std::vector<RankMatrix> deterministic{
      make_rank_matrix({"a", "m"}, {{1, 2, 3}, {1, 2, 3}}, TiePolicy::kMeanOfTied),
      make_rank_matrix({"b", "m"}, {{3, 1, 2}, {3, 1, 2}}, TiePolicy::kMeanOfTied)};
  const auto r0 = ww_randomness(deterministic);
  CHECK(r0.value == 0.0);
  CHECK(r0.coefficient == Coefficient::kWWasserstein);
  CHECK(r0.per_test.size() == 2);

  const std::vector<RankMatrix> overlapping{
      make_rank_matrix({"a", "m"}, {{1, 2}, {2, 1}}, TiePolicy::kMeanOfTied),
      make_rank_matrix({"b", "m"}, {{1.5, 1.5}, {1.5, 1.5}}, TiePolicy::kMeanOfTied)};
  CHECK(ww_randomness(overlapping).value == 1.0);
  CHECK_THROWS_AS(ww_randomness(std::span<const RankMatrix>()), std::invalid_argument);
}
