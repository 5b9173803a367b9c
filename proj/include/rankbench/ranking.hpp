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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rankbench/result_model.hpp"

namespace rankbench {

// A rank that is a whole or half integer, stored as twice its value so that
// sums and squares stay exact.
class Rank {
 public:
  constexpr Rank() = default;
  static constexpr Rank from_twice(std::int64_t twice) { return Rank(twice); }
  static constexpr Rank whole(std::int64_t r) { return Rank(2 * r); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

  friend constexpr auto operator<=>(Rank, Rank) = default;

 private:
  constexpr explicit Rank(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

std::string to_string(Rank rank);

enum class TiePolicy {
  // A tied block at positions p..p+t-1 all get (2p+t-1)/2.
  kMeanOfTied,
  // A tied block at positions p..p+t-1 all get p ("1224" ranking).
  kLowestSharedRank,
};

std::string_view to_string(TiePolicy policy);
TiePolicy parse_tie_policy(std::string_view text);

struct RankedRow {
  std::vector<Rank> ranks;
  // Sizes of tied groups with at least two members, in rank order.
  std::vector<std::size_t> tie_groups;
};

// Ranks one row of scores; the best score gets rank 1. Scores within
// `tie_epsilon` of each other are tied, closed transitively. Throws
// std::invalid_argument on non-finite input, fewer than two values, or a
// negative epsilon.
RankedRow rank_row(std::span<const double> values, Direction direction,
                   TiePolicy policy, double tie_epsilon = 0.0);

// Ranks for one test: n seeds x a algorithms, seed-major.
class RankMatrix {
 public:
  RankMatrix(TestId test, std::size_t num_algorithms, TiePolicy policy);

  void add_row(RankedRow row);

  const TestId& test() const { return test_; }
  TiePolicy policy() const { return policy_; }
  std::size_t num_algorithms() const { return num_algorithms_; }
  std::size_t num_seeds() const { return tie_groups_.size(); }

  Rank at(std::size_t seed, std::size_t algorithm) const {
    return ranks_[seed * num_algorithms_ + algorithm];
  }
  std::span<const Rank> row(std::size_t seed) const {
    return {ranks_.data() + seed * num_algorithms_, num_algorithms_};
  }
  const std::vector<std::size_t>& tie_groups(std::size_t seed) const {
    return tie_groups_[seed];
  }
  // Every rank achieved by one algorithm across seeds.
  std::vector<Rank> column(std::size_t algorithm) const;

 private:
  TestId test_;
  std::size_t num_algorithms_;
  TiePolicy policy_;
  std::vector<Rank> ranks_;
  std::vector<std::vector<std::size_t>> tie_groups_;
};

// Builds a matrix from explicit rank rows, recovering tie groups from equal
// ranks. Throws std::invalid_argument if a row is not a valid ranking of
// 1..a under `policy`.
RankMatrix make_rank_matrix(TestId test,
                            const std::vector<std::vector<double>>& rows,
                            TiePolicy policy);

// One matrix per test in suite order. The table must be failure-resolved.
std::vector<RankMatrix> build_rank_matrices(const ResultTable& table,
                                            TiePolicy policy,
                                            double tie_epsilon = 0.0);

// Number of tied groups (size >= 2) summed over every test and seed.
std::size_t count_ties(std::span<const RankMatrix> matrices);

// Debug export, columns dataset,metric,seed,algorithm,rank.
void write_rank_csv(std::span<const RankMatrix> matrices,
                    const ResultTable& table, std::ostream& out);

}  // namespace rankbench
