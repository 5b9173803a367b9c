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

#include "rankbench/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rankbench/concordance.hpp"
#include "rankbench/digest.hpp"
#include "rankbench/rng.hpp"
#include "rankbench/wasserstein.hpp"

namespace rankbench {
namespace {

// First k entries of a Fisher-Yates shuffle of 0..total-1, sorted.
std::vector<std::size_t> draw_subset(std::size_t total, std::size_t k,
                                     Rng& rng) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

const ConvergenceCell& ConvergenceReport::cell(std::size_t size,
                                               Coefficient c) const {
  for (const auto& cell : cells) {
    if (cell.size == size && cell.coefficient == c) return cell;
  }
  throw std::out_of_range("no convergence cell for size " +
                          std::to_string(size) + " / " +
                          std::string(to_string(c)));
}

double ConvergenceReport::full_suite_value(Coefficient c) const {
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == c) return full_suite_values[i];
  }
  throw std::out_of_range("coefficient not in report: " +
                          std::string(to_string(c)));
}

CoefficientResult compute_coefficient(std::span<const RankMatrix> matrices,
                                      Coefficient c) {
  switch (c) {
    case Coefficient::kW:
      return w_randomness(matrices, false);
    case Coefficient::kWTied:
      return w_randomness(matrices, true);
    case Coefficient::kWWasserstein:
      return ww_randomness(matrices);
  }
  throw std::invalid_argument("unknown coefficient");
}

ConvergenceReport subsample_convergence(std::span<const CoefficientResult> full,
                                        std::vector<std::size_t> sizes,
                                        std::size_t repeats,
                                        std::uint64_t rng_seed) {
  if (full.empty()) {
    throw std::invalid_argument("subsample_convergence: no coefficients");
  }
  if (repeats < 1) {
    throw std::invalid_argument("subsample_convergence: repeats must be >= 1");
  }
  const std::size_t total = full.front().per_test.size();
  if (total == 0) throw std::invalid_argument("subsample_convergence: empty suite");
  for (const auto& c : full) {
    if (c.per_test.size() != total) {
      throw std::invalid_argument("subsample_convergence: suites differ");
    }
    for (std::size_t t = 0; t < total; ++t) {
      if (c.per_test[t].test != full.front().per_test[t].test) {
        throw std::invalid_argument("subsample_convergence: suites differ");
      }
    }
  }
  if (sizes.empty()) {
    sizes.resize(total);
    std::iota(sizes.begin(), sizes.end(), std::size_t{1});
  }
  for (std::size_t k : sizes) {
    if (k < 1 || k > total) {
      throw std::invalid_argument("subsample size " + std::to_string(k) +
                                  " outside [1, " + std::to_string(total) + "]");
    }
  }

  ConvergenceReport report;
  report.sizes = sizes;
  report.repeats = repeats;
  report.suite_size = total;
  report.rng_seed = rng_seed;
  report.rng_algorithm = std::string(kRngAlgorithm);

  std::ostringstream canon;
  std::vector<std::vector<double>> per_test(full.size());
  for (std::size_t c = 0; c < full.size(); ++c) {
    report.coefficients.push_back(full[c].coefficient);
    report.full_suite_values.push_back(full[c].value);
    canon << to_string(full[c].coefficient) << ':'
          << to_string(full[c].policy) << '\n';
    for (const auto& pt : full[c].per_test) {
      per_test[c].push_back(pt.value);
      canon << pt.test.dataset << ',' << pt.test.metric << ','
            << format_double(pt.value) << '\n';
    }
  }
  report.provenance = sha256_hex(canon.str());

  std::vector<double> picked;
  for (std::size_t k : sizes) {
    std::vector<ConvergenceCell> row(full.size());
    for (std::size_t c = 0; c < full.size(); ++c) {
      row[c].size = k;
      row[c].coefficient = full[c].coefficient;
    }
    for (std::size_t r = 0; r < repeats; ++r) {
      Rng rng = Rng::stream(rng_seed, {k, r});
      std::vector<std::size_t> subset = draw_subset(total, k, rng);
      for (std::size_t c = 0; c < full.size(); ++c) {
        picked.clear();
        for (std::size_t t : subset) picked.push_back(per_test[c][t]);
        row[c].values.push_back(randomness_from_agreement(picked));
      }
      report.subsets.push_back(std::move(subset));
    }
    for (auto& cell : row) {
      double sum = 0.0;
      for (double v : cell.values) sum += v;
      cell.mean = sum / static_cast<double>(repeats);
      if (repeats > 1) {
        double ss = 0.0;
        for (double v : cell.values) ss += (v - cell.mean) * (v - cell.mean);
        cell.std = std::sqrt(ss / static_cast<double>(repeats - 1));
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

ConvergenceReport subsample_convergence(std::span<const RankMatrix> matrices,
                                        std::vector<Coefficient> coefficients,
                                        std::vector<std::size_t> sizes,
                                        std::size_t repeats,
                                        std::uint64_t rng_seed) {
  if (coefficients.empty()) {
    throw std::invalid_argument("subsample_convergence: empty coefficient set");
  }
  std::sort(coefficients.begin(), coefficients.end());
  coefficients.erase(std::unique(coefficients.begin(), coefficients.end()),
                     coefficients.end());
  std::vector<CoefficientResult> full;
  for (Coefficient c : coefficients) {
    full.push_back(compute_coefficient(matrices, c));
  }
  return subsample_convergence(full, std::move(sizes), repeats, rng_seed);
}

void write_convergence_values_csv(const ConvergenceReport& report,
                                  std::ostream& out) {
  out << "size,repeat,coefficient,value\n";
  for (const auto& cell : report.cells) {
    for (std::size_t r = 0; r < cell.values.size(); ++r) {
      out << cell.size << ',' << r << ',' << to_string(cell.coefficient) << ','
          << format_double(cell.values[r]) << '\n';
    }
  }
}

void write_convergence_summary_csv(const ConvergenceReport& report,
                                   std::ostream& out) {
  out << "size,coefficient,mean,std\n";
  for (const auto& cell : report.cells) {
    out << cell.size << ',' << to_string(cell.coefficient) << ','
        << format_double(cell.mean) << ',' << format_double(cell.std) << '\n';
  }
}

void write_convergence_svg(const ConvergenceReport& report, std::ostream& out) {
  constexpr double kWidth = 720, kHeight = 420;
  constexpr double kLeft = 60, kRight = 160, kTop = 30, kBottom = 50;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double y_lo = 0.0, y_hi = 1.0;
  for (const auto& c : report.cells) {
    y_lo = std::min(y_lo, c.mean - c.std);
    y_hi = std::max(y_hi, c.mean + c.std);
  }
  const double x_lo = 1.0;
  const double x_hi = std::max<double>(2.0, static_cast<double>(report.suite_size));
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) {
    return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes and ticks.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << py(y_lo) << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << py(y_lo) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << py(y_lo) << "\" x2=\""
      << kLeft << "\" y2=\"" << py(y_hi) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = y_lo + (y_hi - y_lo) * i / 5.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py(y) + 4)
        << "\" text-anchor=\"end\">" << fixed(y) << "</text>\n";
  }
  const std::size_t step = std::max<std::size_t>(1, report.suite_size / 10);
  for (std::size_t x = 1; x <= report.suite_size; x += step) {
    out << "<text x=\"" << fixed(px(static_cast<double>(x))) << "\" y=\""
        << fixed(py(y_lo) + 16) << "\" text-anchor=\"middle\">" << x
        << "</text>\n";
  }
  out << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\""
      << kHeight - 10 << "\" text-anchor=\"middle\">tests sampled</text>\n";
  out << "<text x=\"16\" y=\"" << fixed(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed(kTop + plot_h / 2) << ")\">randomness</text>\n";

  for (std::size_t ci = 0; ci < report.coefficients.size(); ++ci) {
    const Coefficient c = report.coefficients[ci];
    const char* color = kColors[ci % 3];
    std::vector<const ConvergenceCell*> cells;
    for (std::size_t k : report.sizes) cells.push_back(&report.cell(k, c));
    std::sort(cells.begin(), cells.end(),
              [](auto* l, auto* r) { return l->size < r->size; });

    out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" points=\"";
    for (const auto* cell : cells) {
      out << fixed(px(static_cast<double>(cell->size))) << ','
          << fixed(py(cell->mean + cell->std)) << ' ';
    }
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
      out << fixed(px(static_cast<double>((*it)->size))) << ','
          << fixed(py((*it)->mean - (*it)->std)) << ' ';
    }
    out << "\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const auto* cell : cells) {
      out << fixed(px(static_cast<double>(cell->size))) << ','
          << fixed(py(cell->mean)) << ' ';
    }
    out << "\"/>\n";
    const double ly = kTop + 20.0 * static_cast<double>(ci);
    out << "<line x1=\"" << kWidth - kRight + 15 << "\" y1=\"" << ly
        << "\" x2=\"" << kWidth - kRight + 35 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly + 4
        << "\">" << to_string(c) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace rankbench
