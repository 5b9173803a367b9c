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

#include "rankbench/coefficient.hpp"

#include <stdexcept>
#include <string>

namespace rankbench {

std::string_view to_string(Coefficient c) {
  switch (c) {
    case Coefficient::kW:
      return "w";
    case Coefficient::kWTied:
      return "w_tied";
    case Coefficient::kWWasserstein:
      return "w_wasserstein";
  }
  return "w";
}

Coefficient parse_coefficient(std::string_view text) {
  if (text == "w") return Coefficient::kW;
  if (text == "w_tied") return Coefficient::kWTied;
  if (text == "w_wasserstein") return Coefficient::kWWasserstein;
  throw std::invalid_argument("unknown coefficient '" + std::string(text) +
                              "' (expected w, w_tied or w_wasserstein)");
}

double randomness_from_agreement(std::span<const double> per_test) {
  if (per_test.empty()) throw std::invalid_argument("empty test suite");
  double sum = 0.0;
  for (double v : per_test) sum += v;
  return 1.0 - sum / static_cast<double>(per_test.size());
}

}  // namespace rankbench
