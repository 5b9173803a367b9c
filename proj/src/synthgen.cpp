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

#include "rankbench/synthgen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rankbench/rng.hpp"

namespace rankbench {
namespace {

std::string padded(const char* prefix, int i, int count) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(count - 1).size();
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

}  // namespace

void validate(const SynthConfig& c) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("invalid synth config: " + what);
  };
  if (c.n_algorithms < 2) fail("n_algorithms must be >= 2");
  if (c.n_datasets < 1) fail("n_datasets must be >= 1");
  if (c.n_metrics < 1) fail("n_metrics must be >= 1");
  if (c.n_seeds < 1) fail("n_seeds must be >= 1");
  if (!(c.quality_gap >= 0.0) || !std::isfinite(c.quality_gap)) {
    fail("quality_gap must be finite and >= 0");
  }
  if (!(c.noise_scale >= 0.0) || !std::isfinite(c.noise_scale)) {
    fail("noise_scale must be finite and >= 0");
  }
  if (!(c.tie_prob >= 0.0 && c.tie_prob <= 1.0)) fail("tie_prob must be in [0,1]");
  if (!(c.fail_prob >= 0.0 && c.fail_prob <= 1.0)) fail("fail_prob must be in [0,1]");
}

ResultTable generate(const SynthConfig& c) {
  validate(c);
  MetricRegistry registry;
  for (int m = 0; m < c.n_metrics; ++m) {
    registry.add(MetricSpec{padded("metric", m, c.n_metrics),
                            m % 2 == 0 ? Direction::kHigherBetter
                                       : Direction::kLowerBetter,
                            std::nullopt});
  }

  const double top = c.quality_gap * (c.n_algorithms - 1);
  const double lo = -c.noise_scale;
  const double hi = top + c.noise_scale;
  const double step = (hi - lo) / 4.0;
  // Lower-is-better metrics report offset - score.
  const double offset = hi;

  Rng rng(c.rng_seed);
  std::vector<ResultRecord> records;
  records.reserve(static_cast<std::size_t>(c.n_algorithms) * c.n_datasets *
                  c.n_metrics * c.n_seeds);
  for (int d = 0; d < c.n_datasets; ++d) {
    for (int m = 0; m < c.n_metrics; ++m) {
      const bool higher = m % 2 == 0;
      for (int s = 0; s < c.n_seeds; ++s) {
        for (int i = 0; i < c.n_algorithms; ++i) {
          // Always consume three draws per record.
          const double u = rng.unit();
          const bool snap = rng.bernoulli(c.tie_prob);
          const bool failed = rng.bernoulli(c.fail_prob);

          double score = c.quality_gap * (c.n_algorithms - 1 - i) +
                         c.noise_scale * (2.0 * u - 1.0);
          if (snap) {
            score = step > 0.0 ? lo + std::round((score - lo) / step) * step : lo;
          }
          ResultRecord r;
          r.algorithm = padded("alg", i, c.n_algorithms);
          r.dataset = padded("data", d, c.n_datasets);
          r.metric = padded("metric", m, c.n_metrics);
          r.seed = s;
          if (failed) {
            r.status = Status::kOutOfMemory;
          } else {
            r.value = higher ? score : offset - score;
          }
          records.push_back(std::move(r));
        }
      }
    }
  }
  return ResultTable::from_records(std::move(records), std::move(registry));
}

}  // namespace rankbench
