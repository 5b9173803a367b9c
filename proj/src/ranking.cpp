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

#include "rankbench/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace rankbench {
namespace {

// Twice the rank given to a block occupying positions p..p+t-1.
std::int64_t block_rank_twice(std::size_t p, std::size_t t, TiePolicy policy) {
  const auto pp = static_cast<std::int64_t>(p);
  const auto tt = static_cast<std::int64_t>(t);
  return policy == TiePolicy::kMeanOfTied ? 2 * pp + tt - 1 : 2 * pp;
}

}  // namespace

std::string to_string(Rank rank) {
  const std::int64_t t = rank.twice();
  if (t % 2 == 0) return std::to_string(t / 2);
  return std::to_string(t / 2) + ".5";
}

std::string_view to_string(TiePolicy policy) {
  return policy == TiePolicy::kMeanOfTied ? "mean" : "lowest";
}

TiePolicy parse_tie_policy(std::string_view text) {
  if (text == "mean") return TiePolicy::kMeanOfTied;
  if (text == "lowest") return TiePolicy::kLowestSharedRank;
  throw std::invalid_argument("tie policy must be 'mean' or 'lowest', got '" +
                              std::string(text) + "'");
}

RankedRow rank_row(std::span<const double> values, Direction direction,
                   TiePolicy policy, double tie_epsilon) {
  const std::size_t a = values.size();
  if (a < 2) throw std::invalid_argument("rank_row: need at least 2 values");
  if (!(tie_epsilon >= 0.0) || !std::isfinite(tie_epsilon)) {
    throw std::invalid_argument("rank_row: tie epsilon must be finite and >= 0");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("rank_row: non-finite value");
    }
  }

  std::vector<std::size_t> order(a);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const bool higher = direction == Direction::kHigherBetter;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return higher ? values[l] > values[r] : values[l] < values[r];
  });

  RankedRow out;
  out.ranks.resize(a);
  std::size_t start = 0;
  while (start < a) {
    // Adjacent gaps <= epsilon chain into one group.
    std::size_t end = start + 1;
    while (end < a &&
           std::abs(values[order[end]] - values[order[end - 1]]) <= tie_epsilon) {
      ++end;
    }
    const std::size_t size = end - start;
    const Rank r = Rank::from_twice(block_rank_twice(start + 1, size, policy));
    for (std::size_t k = start; k < end; ++k) out.ranks[order[k]] = r;
    if (size >= 2) out.tie_groups.push_back(size);
    start = end;
  }
  return out;
}

RankMatrix::RankMatrix(TestId test, std::size_t num_algorithms,
                       TiePolicy policy)
    : test_(std::move(test)), num_algorithms_(num_algorithms), policy_(policy) {
  if (num_algorithms_ < 2) {
    throw std::invalid_argument("RankMatrix: need at least 2 algorithms");
  }
}

void RankMatrix::add_row(RankedRow row) {
  if (row.ranks.size() != num_algorithms_) {
    throw std::invalid_argument("RankMatrix: row width mismatch");
  }
  ranks_.insert(ranks_.end(), row.ranks.begin(), row.ranks.end());
  tie_groups_.push_back(std::move(row.tie_groups));
}

std::vector<Rank> RankMatrix::column(std::size_t algorithm) const {
  std::vector<Rank> out;
  out.reserve(num_seeds());
  for (std::size_t s = 0; s < num_seeds(); ++s) out.push_back(at(s, algorithm));
  return out;
}

RankMatrix make_rank_matrix(TestId test,
                            const std::vector<std::vector<double>>& rows,
                            TiePolicy policy) {
  const std::size_t a = rows.empty() ? 0 : rows.front().size();
  RankMatrix matrix(std::move(test), a, policy);
  for (const auto& values : rows) {
    if (values.size() != a) {
      throw std::invalid_argument("make_rank_matrix: ragged rows");
    }
    RankedRow row;
    for (double v : values) {
      const double twice = v * 2.0;
      if (!std::isfinite(v) || twice != std::round(twice)) {
        throw std::invalid_argument("make_rank_matrix: ranks must be half-integers");
      }
      row.ranks.push_back(Rank::from_twice(static_cast<std::int64_t>(twice)));
    }
    std::vector<Rank> sorted = row.ranks;
    std::sort(sorted.begin(), sorted.end());
    std::size_t start = 0;
    while (start < a) {
      std::size_t end = start + 1;
      while (end < a && sorted[end] == sorted[start]) ++end;
      if (sorted[start].twice() != block_rank_twice(start + 1, end - start, policy)) {
        throw std::invalid_argument(
            "make_rank_matrix: row is not a valid " +
            std::string(to_string(policy)) + "-tie ranking of 1..a");
      }
      if (end - start >= 2) row.tie_groups.push_back(end - start);
      start = end;
    }
    matrix.add_row(std::move(row));
  }
  return matrix;
}

std::vector<RankMatrix> build_rank_matrices(const ResultTable& table,
                                            TiePolicy policy,
                                            double tie_epsilon) {
  const std::size_t a = table.num_algorithms();
  std::vector<RankMatrix> out;
  out.reserve(table.num_tests());
  std::vector<double> values(a);
  for (std::size_t t = 0; t < table.num_tests(); ++t) {
    const TestId& test = table.suite()[t];
    const Direction direction = table.metric_of(t).direction;
    RankMatrix matrix(test, a, policy);
    for (std::size_t s = 0; s < table.num_seeds(); ++s) {
      for (std::size_t i = 0; i < a; ++i) {
        const Cell& c = table.cell(t, s, i);
        if (!c.value) {
          throw std::invalid_argument(
              "build_rank_matrices: " + to_string(test) + " seed " +
              std::to_string(table.seeds()[s]) +
              ": missing value (run resolve_failures first)");
        }
        values[i] = *c.value;
      }
      try {
        matrix.add_row(rank_row(values, direction, policy, tie_epsilon));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(to_string(test) + " seed " +
                                    std::to_string(table.seeds()[s]) + ": " +
                                    e.what());
      }
    }
    out.push_back(std::move(matrix));
  }
  return out;
}

std::size_t count_ties(std::span<const RankMatrix> matrices) {
  std::size_t total = 0;
  for (const auto& m : matrices) {
    for (std::size_t s = 0; s < m.num_seeds(); ++s) {
      total += m.tie_groups(s).size();
    }
  }
  return total;
}

void write_rank_csv(std::span<const RankMatrix> matrices,
                    const ResultTable& table, std::ostream& out) {
  out << "dataset,metric,seed,algorithm,rank\n";
  for (const auto& m : matrices) {
    for (std::size_t s = 0; s < m.num_seeds(); ++s) {
      for (std::size_t i = 0; i < m.num_algorithms(); ++i) {
        out << m.test().dataset << ',' << m.test().metric << ','
            << table.seeds().at(s) << ',' << table.algorithms().at(i) << ','
            << to_string(m.at(s, i)) << '\n';
      }
    }
  }
}

}  // namespace rankbench
