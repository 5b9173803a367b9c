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

// Convergence of the randomness coefficients under test subsampling: for
// each subsample size k, draw k distinct tests `repeats` times and recompute
// every coefficient on the draw.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rankbench/coefficient.hpp"
#include "rankbench/ranking.hpp"

namespace rankbench {

struct ConvergenceCell {
  std::size_t size = 0;
  Coefficient coefficient = Coefficient::kW;
  std::vector<double> values;  // one per repeat
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 when repeats == 1
};

struct ConvergenceReport {
  std::vector<std::size_t> sizes;
  std::size_t repeats = 0;
  std::size_t suite_size = 0;
  std::vector<Coefficient> coefficients;
  std::vector<double> full_suite_values;  // parallel to coefficients
  // Size-major, then coefficient order.
  std::vector<ConvergenceCell> cells;
  // Drawn test indices per (size, repeat), ascending.
  std::vector<std::vector<std::size_t>> subsets;
  std::uint64_t rng_seed = 0;
  std::string rng_algorithm;
  std::string provenance;

  const ConvergenceCell& cell(std::size_t size, Coefficient c) const;
  double full_suite_value(Coefficient c) const;
};

// Core routine over precomputed per-test breakdowns. Every entry of `full`
// must cover the same suite in the same order; the same subsets are used
// for every coefficient. `provenance` defaults to a digest of the per-test
// values.
ConvergenceReport subsample_convergence(std::span<const CoefficientResult> full,
                                        std::vector<std::size_t> sizes,
                                        std::size_t repeats,
                                        std::uint64_t rng_seed);

// Computes the requested coefficients on `matrices` (W_tied needs
// mean-of-tied ranks) and runs the study. Empty `sizes` means 1..|suite|.
ConvergenceReport subsample_convergence(std::span<const RankMatrix> matrices,
                                        std::vector<Coefficient> coefficients,
                                        std::vector<std::size_t> sizes,
                                        std::size_t repeats,
                                        std::uint64_t rng_seed);

CoefficientResult compute_coefficient(std::span<const RankMatrix> matrices,
                                      Coefficient c);

// size,repeat,coefficient,value
void write_convergence_values_csv(const ConvergenceReport& report,
                                  std::ostream& out);
// size,coefficient,mean,std
void write_convergence_summary_csv(const ConvergenceReport& report,
                                   std::ostream& out);
// Mean line and mean +/- std band per coefficient against subsample size.
void write_convergence_svg(const ConvergenceReport& report, std::ostream& out);

}  // namespace rankbench
