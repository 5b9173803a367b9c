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

#include <sstream>

#include "oracles.hpp"
#include "rankbench/concordance.hpp"
#include "rankbench/synthgen.hpp"
#include "rankbench/wasserstein.hpp"

using namespace rankbench;

namespace {

struct Coefficients {
  double w, w_tied, w_ww;
  std::size_t n_ties;
  std::size_t warnings;
};

Coefficients all_coefficients(const SynthConfig& cfg) {
  const auto m = build_rank_matrices(resolve_failures(generate(cfg)),
                                     TiePolicy::kMeanOfTied);
  const auto w = w_randomness(m, false);
  const auto wt = w_randomness(m, true);
  return {w.value, wt.value, ww_randomness(m).value, count_ties(m),
          wt.warnings.size()};
}

}  // namespace

TEST_CASE("config validation") {
  SynthConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.n_algorithms = 1;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = {};
  cfg.tie_prob = 1.5;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = {};
  cfg.noise_scale = -0.1;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = {};
  cfg.n_seeds = 0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

TEST_CASE("complete grid with alternating metric directions") {
  SynthConfig cfg;
  cfg.n_algorithms = 3;
  cfg.n_datasets = 2;
  cfg.n_metrics = 2;
  cfg.n_seeds = 4;
  const ResultTable t = generate(cfg);
  CHECK(t.records().size() == 3 * 2 * 2 * 4);
  CHECK(t.registry().at("metric0").direction == Direction::kHigherBetter);
  CHECK(t.registry().at("metric1").direction == Direction::kLowerBetter);
}

TEST_CASE("deterministic under rng_seed") {
  SynthConfig cfg;
  cfg.noise_scale = 0.7;
  cfg.tie_prob = 0.3;
  cfg.fail_prob = 0.1;
  cfg.rng_seed = 1234;
  std::ostringstream a, b;
  write_csv(generate(cfg), a);
  write_csv(generate(cfg), b);
  CHECK(a.str() == b.str());
  cfg.rng_seed = 1235;
  std::ostringstream c;
  write_csv(generate(cfg), c);
  CHECK(a.str() != c.str());
}

TEST_CASE("deterministic limit zeroes every coefficient") {
  SynthConfig cfg;
  cfg.n_algorithms = 7;
  cfg.quality_gap = 0.5;
  const auto c = all_coefficients(cfg);
  CHECK(c.w == 0.0);
  CHECK(c.w_tied == 0.0);
  CHECK(c.w_ww == 0.0);
  CHECK(c.n_ties == 0);
}

TEST_CASE("random limit drives W randomness toward 1") {
  SynthConfig cfg;
  cfg.n_algorithms = 10;
  cfg.n_datasets = 10;
  cfg.n_metrics = 4;
  cfg.n_seeds = 10;
  cfg.quality_gap = 0.0;
  cfg.noise_scale = 1.0;
  cfg.rng_seed = 1;
  CHECK(all_coefficients(cfg).w > 0.8);
}

TEST_CASE("every record failing exercises the fully-tied convention") {
  SynthConfig cfg;
  cfg.n_datasets = 3;
  cfg.n_metrics = 2;
  cfg.fail_prob = 1.0;
  const auto c = all_coefficients(cfg);
  CHECK(c.w_tied == 0.0);
  CHECK(c.warnings == 6);
  CHECK(c.n_ties == 6 * static_cast<std::size_t>(cfg.n_seeds));
}

TEST_CASE("tie snapping produces ties") {
  SynthConfig cfg;
  cfg.noise_scale = 0.5;
  cfg.tie_prob = 0.3;
  cfg.rng_seed = 5;
  CHECK(all_coefficients(cfg).n_ties > 0);
}

TEST_CASE("coefficients rise with noise") {
  std::vector<double> noise, w, wt, ww;
  for (int step = 0; step <= 10; ++step) {
    SynthConfig cfg;
    cfg.n_algorithms = 6;
    cfg.quality_gap = 0.5;
    cfg.noise_scale = step / 10.0;
    cfg.rng_seed = 1;
    const auto c = all_coefficients(cfg);
    noise.push_back(cfg.noise_scale);
    w.push_back(c.w);
    wt.push_back(c.w_tied);
    ww.push_back(c.w_ww);
  }
  CHECK(oracle::spearman(noise, w) >= 0.9);
  CHECK(oracle::spearman(noise, wt) >= 0.9);
  CHECK(oracle::spearman(noise, ww) >= 0.9);
}
