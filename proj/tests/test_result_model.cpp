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
#include <random>
#include <sstream>

#include "rankbench/result_model.hpp"
#include "rankbench/synthgen.hpp"

using namespace rankbench;

namespace {

const char* kRegistry =
    "# toy\n"
    "metric.f1.direction = higher\n"
    "metric.f1.bounds = 0,1\n"
    "metric.conductance.direction = lower\n";

MetricRegistry registry() { return MetricRegistry::parse(kRegistry); }

ResultTable ingest_csv(const std::string& text, TableOptions opts = {},
                       std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return ingest(in, InputFormat::kCsv, registry(), opts, warnings);
}

const std::string kMinimal =
    "algorithm,dataset,metric,seed,value,status\n"
    "A,cora,f1,1,0.9,ok\n"
    "B,cora,f1,1,0.7,ok\n"
    "A,cora,f1,2,0.8,ok\n"
    "B,cora,f1,2,0.6,ok\n";

std::vector<std::string> diagnostics_of(const std::string& csv) {
  try {
    ingest_csv(csv);
  } catch (const ValidationError& e) {
    return e.diagnostics();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& diags, const std::string& s) {
  return std::any_of(diags.begin(), diags.end(),
                     [&](const std::string& d) { return d.find(s) != std::string::npos; });
}

}  // namespace

TEST_CASE("registry parsing") {
  const MetricRegistry reg = registry();
  REQUIRE(reg.metrics().size() == 2);
  CHECK(reg.at("f1").direction == Direction::kHigherBetter);
  REQUIRE(reg.at("f1").bounds.has_value());
  CHECK(reg.at("f1").bounds->hi == 1.0);
  CHECK(reg.at("conductance").direction == Direction::kLowerBetter);
  CHECK_FALSE(reg.at("conductance").bounds.has_value());

  CHECK_THROWS_AS(MetricRegistry::parse("metric.x.direction = up\n"), ValidationError);
  CHECK_THROWS_AS(MetricRegistry::parse("metric.x.direction = higher\n"
                                        "metric.x.bounds = 1,0\n"),
                  ValidationError);
  CHECK_THROWS_AS(MetricRegistry::parse("metric.x.bounds = 0,1\n"), ValidationError);
  CHECK_THROWS_AS(MetricRegistry::parse("nonsense\n"), ValidationError);

  std::ostringstream out;
  reg.write(out);
  CHECK(MetricRegistry::parse(out.str()) == reg);
}

TEST_CASE("minimal complete grid") {
  const ResultTable t = ingest_csv(kMinimal);
  CHECK(t.num_algorithms() == 2);
  CHECK(t.num_seeds() == 2);
  CHECK(t.num_tests() == 1);
  CHECK(t.suite().front() == TestId{"cora", "f1"});
  CHECK(t.seeds() == std::vector<std::int64_t>{1, 2});
  CHECK(*t.cell(0, 1, 1).value == 0.6);
}

TEST_CASE("missing row is reported by cell") {
  const std::string csv = kMinimal.substr(0, kMinimal.rfind("B,cora,f1,2"));
  const auto diags = diagnostics_of(csv);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0] == "missing cell: algorithm=B dataset=cora metric=f1 seed=2");
}

TEST_CASE("ingest error paths") {
  SUBCASE("duplicate key") {
    CHECK(any_contains(diagnostics_of(kMinimal + "A,cora,f1,1,0.5,ok\n"),
                       "duplicate record for A on cora/f1 seed 1"));
  }
  SUBCASE("unknown metric") {
    CHECK(any_contains(diagnostics_of(kMinimal + "A,cora,nmi,1,0.5,ok\n"),
                       "unknown metric 'nmi'"));
  }
  SUBCASE("malformed row carries its row number") {
    CHECK(any_contains(diagnostics_of(kMinimal + "A,cora,f1,x,0.5,ok\n"), "row 6"));
    CHECK(any_contains(diagnostics_of(kMinimal + "A,cora,f1,3,abc,ok\n"),
                       "value is not a real number"));
    CHECK(any_contains(diagnostics_of(kMinimal + "A,cora,f1,3,0.5,crashed\n"),
                       "unknown status"));
    CHECK(any_contains(diagnostics_of(kMinimal + "A,cora,f1,3\n"), "expected 6 fields"));
  }
  SUBCASE("ok requires a value") {
    CHECK(any_contains(diagnostics_of(kMinimal + "C,cora,f1,1,,ok\n"),
                       "status ok requires a value"));
  }
  SUBCASE("value outside bounds") {
    CHECK(any_contains(diagnostics_of(kMinimal + "C,cora,f1,1,1.5,ok\n"),
                       "outside the metric bounds"));
  }
  SUBCASE("wrong header") {
    CHECK_THROWS_AS(ingest_csv("algo,dataset,metric,seed,value,status\n"),
                    ValidationError);
    CHECK_THROWS_AS(ingest_csv(""), ValidationError);
  }
  SUBCASE("single algorithm") {
    CHECK(any_contains(diagnostics_of("algorithm,dataset,metric,seed,value,status\n"
                                      "A,cora,f1,1,0.5,ok\n"),
                       "at least 2 algorithms"));
  }
}

TEST_CASE("failure value may be empty") {
  const ResultTable t = ingest_csv(
      "algorithm,dataset,metric,seed,value,status\n"
      "A,cora,f1,1,0.9,ok\n"
      "B,cora,f1,1,,oom\n");
  CHECK(t.cell(0, 0, 1).status == Status::kOutOfMemory);
  CHECK_FALSE(t.cell(0, 0, 1).value.has_value());
}

TEST_CASE("drop incomplete tests is opt-in and never imputes") {
  const std::string csv = kMinimal +
                          "A,cora,conductance,1,0.1,ok\n"
                          "B,cora,conductance,1,0.2,ok\n"
                          "A,cora,conductance,2,0.1,ok\n";
  CHECK_THROWS_AS(ingest_csv(csv), ValidationError);
  std::vector<std::string> warnings;
  const ResultTable t = ingest_csv(csv, TableOptions{true}, &warnings);
  REQUIRE(t.num_tests() == 1);
  CHECK(t.suite().front().metric == "f1");
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0] == "dropped incomplete test cora/conductance");
}

TEST_CASE("eleven datasets by four metrics give 44 tests") {
  SynthConfig cfg;
  cfg.n_algorithms = 10;
  cfg.n_datasets = 11;
  cfg.n_metrics = 4;
  cfg.n_seeds = 10;
  const ResultTable t = generate(cfg);
  CHECK(t.num_tests() == 44);
  CHECK(t.num_algorithms() == 10);
  CHECK(t.num_seeds() == 10);
}

TEST_CASE("JSON ingestion matches CSV ingestion") {
  const ResultTable from_csv = ingest_csv(kMinimal);
  std::ostringstream js;
  write_json(from_csv, js);
  std::istringstream in(js.str());
  CHECK(ingest(in, InputFormat::kJson, registry()) == from_csv);

  std::istringstream bad("{\"algorithm\": \"A\"}");
  CHECK_THROWS_AS(ingest(bad, InputFormat::kJson, registry()), ValidationError);
  std::istringstream nulls(
      R"([{"algorithm":"A","dataset":"d","metric":"f1","seed":1,"value":0.5,"status":"ok"},
          {"algorithm":"B","dataset":"d","metric":"f1","seed":1,"value":null,"status":"timeout"}])");
  const ResultTable t = ingest(nulls, InputFormat::kJson, registry());
  CHECK(t.cell(0, 0, 1).status == Status::kTimeout);
}

TEST_CASE("round trip and row-order independence (property)") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    SynthConfig cfg;
    cfg.n_algorithms = 2 + trial % 4;
    cfg.n_datasets = 1 + trial % 3;
    cfg.n_metrics = 1 + trial % 2;
    cfg.n_seeds = 1 + trial % 5;
    cfg.noise_scale = 0.3;
    cfg.tie_prob = 0.3;
    cfg.fail_prob = 0.2;
    cfg.rng_seed = static_cast<std::uint64_t>(trial);
    const ResultTable t = generate(cfg);

    std::ostringstream out;
    write_csv(t, out);
    std::istringstream in(out.str());
    const ResultTable back = ingest(in, InputFormat::kCsv, t.registry());
    CHECK(back == t);

    auto records = t.records();
    std::shuffle(records.begin(), records.end(), gen);
    const ResultTable shuffled = ResultTable::from_records(records, t.registry());
    CHECK(shuffled.suite() == t.suite());
    CHECK(shuffled.algorithms() == t.algorithms());
    CHECK(shuffled.seeds() == t.seeds());
    CHECK(shuffled == t);
  }
}

TEST_CASE("resolve_failures: bounded higher-better gets the low endpoint") {
  const ResultTable t = resolve_failures(ingest_csv(
      "algorithm,dataset,metric,seed,value,status\n"
      "A,cora,f1,1,0.9,ok\n"
      "B,cora,f1,1,,oom\n"));
  CHECK(*t.cell(0, 0, 1).value == 0.0);
  CHECK(t.cell(0, 0, 1).status == Status::kOutOfMemory);
}

TEST_CASE("resolve_failures: unbounded lower-better gets max observed + 1") {
  const ResultTable t = resolve_failures(ingest_csv(
      "algorithm,dataset,metric,seed,value,status\n"
      "A,cora,conductance,1,0.2,ok\n"
      "B,cora,conductance,1,0.5,ok\n"
      "C,cora,conductance,1,,error\n"));
  CHECK(*t.cell(0, 0, 2).value == 1.5);
  CHECK(*t.cell(0, 0, 2).value > 0.5);
}

TEST_CASE("resolve_failures: two failures on a test get the same value") {
  const ResultTable t = resolve_failures(ingest_csv(
      "algorithm,dataset,metric,seed,value,status\n"
      "A,cora,f1,1,0.9,ok\n"
      "B,cora,f1,1,,oom\n"
      "C,cora,f1,1,0.3,oom\n"));
  CHECK(*t.cell(0, 0, 1).value == *t.cell(0, 0, 2).value);
}

TEST_CASE("resolve_failures properties: idempotent, ok values untouched") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    SynthConfig cfg;
    cfg.n_algorithms = 4;
    cfg.n_datasets = 2;
    cfg.n_metrics = 2;
    cfg.n_seeds = 3;
    cfg.noise_scale = 0.5;
    cfg.fail_prob = 0.3;
    cfg.rng_seed = seed;
    const ResultTable raw = generate(cfg);
    const ResultTable once = resolve_failures(raw);
    CHECK(resolve_failures(once) == once);
    for (std::size_t t = 0; t < raw.num_tests(); ++t) {
      const bool higher = raw.metric_of(t).direction == Direction::kHigherBetter;
      for (std::size_t s = 0; s < raw.num_seeds(); ++s) {
        for (std::size_t i = 0; i < raw.num_algorithms(); ++i) {
          const Cell& before = raw.cell(t, s, i);
          const Cell& after = once.cell(t, s, i);
          REQUIRE(after.value.has_value());
          if (before.status == Status::kOk) {
            CHECK(after == before);
            continue;
          }
          // Strictly worse than every ok value on the test.
          for (std::size_t s2 = 0; s2 < raw.num_seeds(); ++s2) {
            for (std::size_t j = 0; j < raw.num_algorithms(); ++j) {
              const Cell& other = raw.cell(t, s2, j);
              if (other.status != Status::kOk) continue;
              CHECK((higher ? *after.value < *other.value
                            : *after.value > *other.value));
            }
          }
        }
      }
    }
  }
}
