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

#include "rankbench/cli.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rankbench/comparison.hpp"
#include "rankbench/concordance.hpp"
#include "rankbench/digest.hpp"
#include "rankbench/ranking.hpp"
#include "rankbench/report.hpp"
#include "rankbench/resampling.hpp"
#include "rankbench/result_model.hpp"
#include "rankbench/synthgen.hpp"
#include "rankbench/wasserstein.hpp"

namespace rankbench {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::shared_ptr<spdlog::logger> logger() {
  static auto log = [] {
    auto l = spdlog::stderr_logger_st("rankbench");
    l->set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("RANKBENCH_LOG")) {
      level = spdlog::level::from_str(env);
    }
    l->set_level(level);
    return l;
  }();
  return log;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

struct Globals {
  std::string registry_path;
  std::string format = "json";
  std::string tie_policy = "mean";
  double tie_epsilon = 0.0;
  std::string output;
  std::string input_format;  // empty: by extension
  bool drop_incomplete = false;
};

struct LoadedInput {
  std::string path;
  std::string digest;
};

struct Session {
  Globals g;
  std::vector<LoadedInput> inputs;
  std::vector<std::string> warnings;

  MetricRegistry registry;

  void load_registry() {
    if (g.registry_path.empty()) {
      throw ValidationError({"--registry <path> is required"});
    }
    const std::string text = read_file(g.registry_path);
    inputs.push_back({g.registry_path, sha256_hex(text)});
    registry = MetricRegistry::parse(text);
    logger()->debug("registry: {} metrics", registry.metrics().size());
  }

  ResultTable load_table(const std::string& path) {
    const std::string text = read_file(path);
    inputs.push_back({path, sha256_hex(text)});
    InputFormat fmt = InputFormat::kCsv;
    if (g.input_format == "json" ||
        (g.input_format.empty() && path.size() >= 5 &&
         path.compare(path.size() - 5, 5, ".json") == 0)) {
      fmt = InputFormat::kJson;
    }
    std::istringstream in(text);
    TableOptions options;
    options.drop_incomplete_tests = g.drop_incomplete;
    ResultTable table = ingest(in, fmt, registry, options, &warnings);
    logger()->info("{}: {} algorithms, {} seeds, {} tests", path,
                   table.num_algorithms(), table.num_seeds(), table.num_tests());
    return table;
  }

  Json header(const std::string& command) const {
    Json j;
    j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    j["command"] = command;
    Json in = Json::array();
    for (const auto& i : inputs) in.push_back(Json{{"path", i.path}, {"digest", i.digest}});
    j["inputs"] = std::move(in);
    j["registry"] = to_json(registry);
    return j;
  }
};

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw IoError("cannot write '" + g.output + "'");
  file << text;
  if (!file) throw IoError("error writing '" + g.output + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << text;
  if (!file) throw IoError("error writing '" + path + "'");
}

void finish_report(Json& report, const std::vector<std::string>& warnings) {
  report["warnings"] = warnings;
  for (const auto& w : warnings) logger()->warn("{}", w);
}

std::vector<Coefficient> parse_coefficients(const std::string& list) {
  std::vector<Coefficient> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Coefficient c = parse_coefficient(item);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  if (out.empty()) throw std::invalid_argument("empty coefficient set");
  std::sort(out.begin(), out.end());
  return out;
}

// "1-10", "1,2,5", "3-5,8"; empty means every size.
std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) {
      throw ValidationError({"bad size '" + s + "' in --sizes"});
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(number(item));
    } else {
      const std::size_t lo = number(item.substr(0, dash));
      const std::size_t hi = number(item.substr(dash + 1));
      if (lo > hi) throw ValidationError({"bad range '" + item + "' in --sizes"});
      for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
    }
  }
  return out;
}

// Coefficients on the given ranks; w_tied is always on mean-of-tied ranks.
struct CoefficientSet {
  std::vector<CoefficientResult> results;
  std::size_t n_ties = 0;
};

CoefficientSet compute_set(const ResultTable& resolved,
                           const std::vector<Coefficient>& wanted,
                           TiePolicy policy, double epsilon,
                           bool compare_policies) {
  CoefficientSet set;
  const auto primary = build_rank_matrices(resolved, policy, epsilon);
  std::vector<RankMatrix> mean_matrices;
  auto mean_ranks = [&]() -> const std::vector<RankMatrix>& {
    if (policy == TiePolicy::kMeanOfTied) return primary;
    if (mean_matrices.empty()) {
      mean_matrices =
          build_rank_matrices(resolved, TiePolicy::kMeanOfTied, epsilon);
    }
    return mean_matrices;
  };
  set.n_ties = count_ties(primary);
  for (Coefficient c : wanted) {
    switch (c) {
      case Coefficient::kW:
        set.results.push_back(w_randomness(primary, false));
        if (compare_policies) {
          const TiePolicy other = policy == TiePolicy::kMeanOfTied
                                      ? TiePolicy::kLowestSharedRank
                                      : TiePolicy::kMeanOfTied;
          const auto alt = build_rank_matrices(resolved, other, epsilon);
          set.results.push_back(w_randomness(alt, false));
        }
        break;
      case Coefficient::kWTied:
        set.results.push_back(w_randomness(mean_ranks(), true));
        break;
      case Coefficient::kWWasserstein:
        set.results.push_back(ww_randomness(primary));
        break;
    }
  }
  return set;
}

int cmd_validate(Session& s, const std::string& input, std::ostream& out) {
  s.load_registry();
  const ResultTable table = s.load_table(input);
  Json report = s.header("validate");
  report["valid"] = true;
  report["algorithms"] = table.num_algorithms();
  report["seeds"] = table.num_seeds();
  report["tests"] = table.num_tests();
  finish_report(report, s.warnings);
  if (s.g.format == "csv") {
    std::ostringstream csv;
    csv << "valid,algorithms,seeds,tests\ntrue," << table.num_algorithms()
        << ',' << table.num_seeds() << ',' << table.num_tests() << '\n';
    emit(s.g, out, csv.str());
  } else {
    emit(s.g, out, report.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_rank(Session& s, const std::string& input, std::ostream& out) {
  s.load_registry();
  const ResultTable table = resolve_failures(s.load_table(input));
  const TiePolicy policy = parse_tie_policy(s.g.tie_policy);
  const auto matrices = build_rank_matrices(table, policy, s.g.tie_epsilon);
  if (s.g.format == "csv") {
    std::ostringstream csv;
    write_rank_csv(matrices, table, csv);
    emit(s.g, out, csv.str());
    return kExitOk;
  }
  Json report = s.header("rank");
  report["settings"] = Json{{"tie_policy", std::string(to_string(policy))},
                            {"tie_epsilon", s.g.tie_epsilon}};
  report["n_ties"] = count_ties(matrices);
  report["matrices"] = to_json(matrices, table);
  finish_report(report, s.warnings);
  emit(s.g, out, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_coeff(Session& s, const std::string& input,
              const std::string& coefficients, bool compare_policies,
              std::ostream& out) {
  s.load_registry();
  const ResultTable table = resolve_failures(s.load_table(input));
  const TiePolicy policy = parse_tie_policy(s.g.tie_policy);
  const auto wanted = parse_coefficients(coefficients);
  const CoefficientSet set =
      compute_set(table, wanted, policy, s.g.tie_epsilon, compare_policies);
  for (const auto& r : set.results) {
    s.warnings.insert(s.warnings.end(), r.warnings.begin(), r.warnings.end());
  }

  if (s.g.format == "csv") {
    std::ostringstream csv;
    csv << "coefficient,tie_policy,dataset,metric,value\n";
    for (const auto& r : set.results) {
      csv << to_string(r.coefficient) << ',' << to_string(r.policy) << ",,,"
          << format_double(r.value) << '\n';
      for (const auto& pt : r.per_test) {
        csv << to_string(r.coefficient) << ',' << to_string(r.policy) << ','
            << pt.test.dataset << ',' << pt.test.metric << ','
            << format_double(pt.value) << '\n';
      }
    }
    csv << "n_ties," << to_string(policy) << ",,," << set.n_ties << '\n';
    emit(s.g, out, csv.str());
    for (const auto& w : s.warnings) logger()->warn("{}", w);
    return kExitOk;
  }

  Json report = s.header("coeff");
  report["settings"] =
      Json{{"tie_policy", std::string(to_string(policy))},
           {"tie_epsilon", s.g.tie_epsilon},
           {"coefficients", coefficients},
           {"compare_tie_policies", compare_policies},
           {"drop_incomplete", s.g.drop_incomplete}};
  Json results = Json::array();
  for (const auto& r : set.results) {
    const bool with_ties = r.coefficient != Coefficient::kWWasserstein;
    results.push_back(to_json(r, with_ties ? std::optional(set.n_ties)
                                           : std::nullopt));
  }
  report["coefficients"] = std::move(results);
  report["n_ties"] = set.n_ties;
  finish_report(report, s.warnings);
  emit(s.g, out, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_fcr(Session& s, const std::vector<std::string>& specs,
            const std::string& granularity_text, std::ostream& out) {
  s.load_registry();
  const Granularity granularity = parse_granularity(granularity_text);
  std::vector<FrameworkResult> frameworks;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw ValidationError({"--framework expects label=path, got '" + spec + "'"});
    }
    frameworks.push_back(
        FrameworkResult{spec.substr(0, eq), s.load_table(spec.substr(eq + 1))});
  }
  const FcrResult result = fcr(frameworks, granularity);
  if (s.g.format == "csv") {
    std::ostringstream csv;
    csv << "framework,fcr,units,granularity\n";
    for (std::size_t k = 0; k < result.labels.size(); ++k) {
      csv << result.labels[k] << ',' << format_double(result.fcr[k]) << ','
          << result.units << ',' << to_string(result.granularity) << '\n';
    }
    emit(s.g, out, csv.str());
    return kExitOk;
  }
  Json report = s.header("fcr");
  report["settings"] =
      Json{{"granularity", std::string(to_string(granularity))},
           {"drop_incomplete", s.g.drop_incomplete}};
  report["fcr"] = to_json(result);
  finish_report(report, s.warnings);
  emit(s.g, out, report.dump(2) + "\n");
  return kExitOk;
}

struct ConvergeOptions {
  std::string coefficients = "w,w_tied,w_wasserstein";
  std::string sizes;
  std::size_t repeats = 10;
  std::uint64_t rng_seed = 0;
  std::string svg_out;
  std::string plot_csv;
  std::string summary_csv;
};

int cmd_converge(Session& s, const std::string& input,
                 const ConvergeOptions& o, std::ostream& out) {
  s.load_registry();
  const ResultTable table = resolve_failures(s.load_table(input));
  const TiePolicy policy = parse_tie_policy(s.g.tie_policy);
  const auto wanted = parse_coefficients(o.coefficients);
  const CoefficientSet set =
      compute_set(table, wanted, policy, s.g.tie_epsilon, false);
  for (const auto& r : set.results) {
    s.warnings.insert(s.warnings.end(), r.warnings.begin(), r.warnings.end());
  }
  std::vector<std::size_t> sizes = parse_sizes(o.sizes);
  for (std::size_t k : sizes) {
    if (k < 1 || k > table.num_tests()) {
      throw ValidationError({"subsample size " + std::to_string(k) +
                             " outside [1, " +
                             std::to_string(table.num_tests()) + "]"});
    }
  }
  const ConvergenceReport conv =
      subsample_convergence(set.results, sizes, o.repeats, o.rng_seed);

  if (!o.plot_csv.empty()) {
    std::ostringstream csv;
    write_convergence_values_csv(conv, csv);
    write_text_file(o.plot_csv, csv.str());
  }
  if (!o.summary_csv.empty()) {
    std::ostringstream csv;
    write_convergence_summary_csv(conv, csv);
    write_text_file(o.summary_csv, csv.str());
  }
  if (!o.svg_out.empty()) {
    std::ostringstream svg;
    write_convergence_svg(conv, svg);
    write_text_file(o.svg_out, svg.str());
  }

  if (s.g.format == "csv") {
    std::ostringstream csv;
    write_convergence_values_csv(conv, csv);
    emit(s.g, out, csv.str());
    for (const auto& w : s.warnings) logger()->warn("{}", w);
    return kExitOk;
  }
  Json report = s.header("converge");
  report["settings"] = Json{{"tie_policy", std::string(to_string(policy))},
                            {"tie_epsilon", s.g.tie_epsilon},
                            {"coefficients", o.coefficients},
                            {"sizes", o.sizes.empty() ? "all" : o.sizes},
                            {"repeats", o.repeats},
                            {"rng_seed", o.rng_seed},
                            {"drop_incomplete", s.g.drop_incomplete}};
  Json coeffs = Json::array();
  for (const auto& r : set.results) coeffs.push_back(to_json(r));
  report["coefficients"] = std::move(coeffs);
  report["n_ties"] = set.n_ties;
  report["convergence"] = to_json(conv);
  finish_report(report, s.warnings);
  emit(s.g, out, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_synth(Session& s, const SynthConfig& config,
              const std::string& registry_out, bool json, std::ostream& out) {
  const ResultTable table = generate(config);
  std::ostringstream text;
  if (json) {
    write_json(table, text);
  } else {
    write_csv(table, text);
  }
  emit(s.g, out, text.str());
  if (!registry_out.empty()) {
    std::ostringstream reg;
    table.registry().write(reg);
    write_text_file(registry_out, reg.str());
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Quantify how seed randomness affects algorithm rankings",
               "rankbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  Session s;
  Globals& g = s.g;
  app.add_option("--registry", g.registry_path, "Metric registry file");
  auto* format_opt = app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tie-policy", g.tie_policy, "Tie handling for ranks")
      ->check(CLI::IsMember({"mean", "lowest"}));
  app.add_option("--tie-epsilon", g.tie_epsilon,
                 "Scores within this distance tie")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", g.output, "Write the report here, not stdout");
  app.add_option("--input-format", g.input_format,
                 "Result input format (default: by extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--drop-incomplete", g.drop_incomplete,
               "Drop tests with missing cells instead of failing");

  std::string input;
  auto* validate = app.add_subcommand("validate", "Check a result table");
  validate->add_option("input", input, "Result file")->required();

  auto* rank = app.add_subcommand("rank", "Export per-seed rank matrices");
  rank->add_option("input", input, "Result file")->required();

  std::string coefficients = "w,w_tied,w_wasserstein";
  bool compare_policies = false;
  auto* coeff = app.add_subcommand("coeff", "Randomness coefficients");
  coeff->add_option("input", input, "Result file")->required();
  coeff->add_option("--coefficients", coefficients,
                    "Comma list of w, w_tied, w_wasserstein");
  coeff->add_flag("--compare-tie-policies", compare_policies,
                  "Also report W under the other tie policy");

  std::vector<std::string> frameworks;
  std::string granularity = "per-algorithm-test";
  auto* fcr_cmd = app.add_subcommand("fcr", "Framework Comparison Rank");
  fcr_cmd->add_option("--framework", frameworks, "label=path, repeatable")
      ->required();
  fcr_cmd->add_option("--granularity", granularity, "Comparison unit")
      ->check(CLI::IsMember({"per-algorithm-test", "per-test"}));

  ConvergeOptions conv;
  auto* converge = app.add_subcommand("converge", "Test-subsampling study");
  converge->add_option("input", input, "Result file")->required();
  converge->add_option("--coefficients", conv.coefficients,
                       "Comma list of w, w_tied, w_wasserstein");
  converge->add_option("--sizes", conv.sizes,
                       "Subsample sizes, e.g. 1-44 or 1,5,10 (default all)");
  converge->add_option("--repeats", conv.repeats, "Draws per size")
      ->check(CLI::PositiveNumber);
  converge->add_option("--rng-seed", conv.rng_seed, "Sampling seed");
  converge->add_option("--svg-out", conv.svg_out, "Write an SVG chart");
  converge->add_option("--plot-csv", conv.plot_csv,
                       "Write size,repeat,coefficient,value");
  converge->add_option("--summary-csv", conv.summary_csv,
                       "Write size,coefficient,mean,std");

  SynthConfig synth_cfg;
  std::string registry_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic result table");
  synth->add_option("--algorithms", synth_cfg.n_algorithms);
  synth->add_option("--datasets", synth_cfg.n_datasets);
  synth->add_option("--metrics", synth_cfg.n_metrics);
  synth->add_option("--seeds", synth_cfg.n_seeds);
  synth->add_option("--quality-gap", synth_cfg.quality_gap);
  synth->add_option("--noise-scale", synth_cfg.noise_scale);
  synth->add_option("--tie-prob", synth_cfg.tie_prob);
  synth->add_option("--fail-prob", synth_cfg.fail_prob);
  synth->add_option("--rng-seed", synth_cfg.rng_seed);
  synth->add_option("--registry-out", registry_out,
                    "Write the generated metric registry here");

  std::vector<std::string> argv_store;
  argv_store.push_back("rankbench");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate) return cmd_validate(s, input, out);
    if (*rank) return cmd_rank(s, input, out);
    if (*coeff) return cmd_coeff(s, input, coefficients, compare_policies, out);
    if (*fcr_cmd) return cmd_fcr(s, frameworks, granularity, out);
    if (*converge) return cmd_converge(s, input, conv, out);
    // Synthetic tables default to the CSV input format.
    if (*synth) {
      const bool json = format_opt->count() > 0 && g.format == "json";
      return cmd_synth(s, synth_cfg, registry_out, json, out);
    }
  } catch (const ValidationError& e) {
    for (const auto& d : e.diagnostics()) err << "error: " << d << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace rankbench
