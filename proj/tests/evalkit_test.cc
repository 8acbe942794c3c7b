// Copyright 2026 The transcheck Authors
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

#include <gtest/gtest.h>

#include <random>

#include "support/synthetic_ledger.h"
#include "transcheck/evalkit/metrics.h"
#include "transcheck/evalkit/report.h"
#include "transcheck/perturb/perturbation.h"
#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck::evalkit {
namespace {

using pipeline::AttemptRecord;
using testing::SyntheticLedger;
using testing::SyntheticShape;

// Fraction of k-subsets of n runs that contain one of the c successes.
double BruteForcePass(int n, int c, int k) {
  long hit = 0, all = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    ++all;
    if (mask & ((1u << c) - 1)) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(all);
}

TEST(PassAtKTest, MatchesSubsetEnumeration) {
  for (int n = 1; n <= 12; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        EXPECT_NEAR(PassAtK(n, c, k), BruteForcePass(n, c, k), 1e-12) << n << c << k;
      }
    }
  }
  EXPECT_NEAR(PassAtK(10, 3, 5), 231.0 / 252.0, 1e-15);
  EXPECT_DOUBLE_EQ(PassAtK(20, 20, 5), 1.0);
  EXPECT_DOUBLE_EQ(PassAtK(10, 0, 5), 0.0);
}

TEST(PassAtKTest, LawsAndErrors) {
  for (int n = 1; n <= 30; ++n) {
    for (int c = 0; c <= n; ++c) {
      EXPECT_DOUBLE_EQ(PassAtK(n, c, n), c >= 1 ? 1.0 : 0.0);
      EXPECT_NEAR(PassAtK(n, c, 1), static_cast<double>(c) / n, 1e-12);
      for (int k = 1; k <= n; ++k) {
        double v = PassAtK(n, c, k);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        if (k > 1) EXPECT_GE(v + 1e-12, PassAtK(n, c, k - 1));
        if (c > 0) EXPECT_GE(v + 1e-12, PassAtK(n, c - 1, k));
      }
    }
  }
  EXPECT_THROW(PassAtK(4, 2, 5), std::invalid_argument);
  EXPECT_THROW(PassAtK(4, 5, 2), std::invalid_argument);
  EXPECT_THROW(PassAtK(4, 2, 0), std::invalid_argument);
  // Large n stays finite.
  EXPECT_NEAR(PassAtK(1000, 1, 1000), 1.0, 1e-12);
}

// ---- pass tables ---------------------------------------------------------

RunRecord MakeRun(const std::string& file, const std::string& pid, int run, int compiled,
              int fuzzed) {
  RunRecord r;
  r.source_id = file;
  r.perturbation_id = pid;
  r.model_id = "m";
  r.run_index = run;
  if (compiled > 0) r.first_iteration[CheckStage::kCompiled] = compiled;
  if (fuzzed > 0) {
    r.first_iteration[CheckStage::kLinted] = fuzzed;
    r.first_iteration[CheckStage::kFuzzed] = fuzzed;
    r.success = true;
  }
  int attempts = fuzzed > 0 ? fuzzed : 5;
  for (int i = 1; i <= attempts; ++i) {
    AttemptRecord a;
    a.iteration = i;
    a.usage.prompt = 10;
    a.usage.completion = 100;
    if (fuzzed > 0 && i == fuzzed) {
      for (CheckStage s : checkers::kAllStages) a.reports.push_back(checkers::MakeSuccess(s));
    } else if (compiled > 0 && i >= compiled) {
      a.reports = {checkers::MakeSuccess(CheckStage::kCompiled),
                   checkers::MakeFailure(CheckStage::kLinted, {"lint"})};
    } else {
      a.reports = {checkers::MakeFailure(CheckStage::kCompiled, {"error"})};
    }
    r.attempts.push_back(std::move(a));
  }
  return r;
}

TEST(PassTableTest, AllSuccessfulIsOne) {
  std::vector<RunRecord> records;
  for (int f = 0; f < 3; ++f) {
    for (int i = 0; i < 5; ++i) records.push_back(MakeRun("f" + std::to_string(f), "identity", i, 1, 1));
  }
  PassTable t = PassTableByIteration(records, {});
  for (const auto& row : t.cells) {
    for (const PassCell& c : row) {
      EXPECT_DOUBLE_EQ(c.estimate, 1.0);
      EXPECT_EQ(c.files, 3u);
      EXPECT_FALSE(c.incomplete);
    }
  }
  EXPECT_EQ(PassTableCsv(t),
            "Check,<=1,<=2,<=3,<=4,<=5\n"
            "Compilation success,1.0000,1.0000,1.0000,1.0000,1.0000\n"
            "Final result,1.0000,1.0000,1.0000,1.0000,1.0000\n");
}

TEST(PassTableTest, PerFileThenAverage) {
  // f0: 2 of 5 runs succeed at iteration 3; f1: none.
  std::vector<RunRecord> records;
  for (int i = 0; i < 5; ++i) records.push_back(MakeRun("f0", "identity", i, 1, i < 2 ? 3 : 0));
  for (int i = 0; i < 5; ++i) records.push_back(MakeRun("f1", "identity", i, 2, 0));
  PassTable t = PassTableByIteration(records, {}, {CheckStage::kCompiled, CheckStage::kFuzzed},
                                     {1, 2, 3}, 1);
  EXPECT_DOUBLE_EQ(t.cells[0][0].estimate, 0.5);
  EXPECT_DOUBLE_EQ(t.cells[0][1].estimate, 1.0);
  EXPECT_DOUBLE_EQ(t.cells[1][1].estimate, 0.0);
  EXPECT_DOUBLE_EQ(t.cells[1][2].estimate, (2.0 / 5.0 + 0.0) / 2.0);
}

TEST(PassTableTest, FlagsShortCellsAndSkipsUnfuzzableFiles) {
  std::vector<RunRecord> records;
  for (int i = 0; i < 3; ++i) records.push_back(MakeRun("short", "identity", i, 1, 1));
  for (int i = 0; i < 5; ++i) {
    RunRecord r = MakeRun("nofuzz", "identity", i, 1, 0);
    r.fuzzable = false;
    records.push_back(r);
  }
  for (int i = 0; i < 5; ++i) records.push_back(MakeRun("ok", "identity", i, 1, 1));
  PassTable t = PassTableByIteration(records, {});
  const PassCell& compiled = t.cells[0][4];
  EXPECT_TRUE(compiled.incomplete);
  EXPECT_EQ(compiled.files, 2u);
  ASSERT_EQ(compiled.gaps.size(), 1u);
  EXPECT_TRUE(StartsWith(compiled.gaps[0], "short:"));
  const PassCell& final_cell = t.cells[1][4];
  EXPECT_EQ(final_cell.excluded, 1u);
  EXPECT_EQ(final_cell.files, 1u);
  EXPECT_DOUBLE_EQ(final_cell.estimate, 1.0);
}

TEST(PassTableTest, ShapeLawsOnSyntheticLedgers) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto records = SyntheticLedger(seed, {});
    std::vector<PassTable> by_k;
    for (int k : {1, 3, 5, 8}) {
      by_k.push_back(PassTableByIteration(records, {}, {CheckStage::kCompiled,
                                                        CheckStage::kLinted,
                                                        CheckStage::kFuzzed},
                                          {1, 2, 3, 4, 5}, k));
    }
    for (std::size_t ki = 0; ki < by_k.size(); ++ki) {
      const PassTable& t = by_k[ki];
      for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t c = 0; c < 5; ++c) {
          if (c > 0) EXPECT_GE(t.cells[s][c].estimate + 1e-12, t.cells[s][c - 1].estimate);
          if (s > 0) EXPECT_LE(t.cells[s][c].estimate, t.cells[s - 1][c].estimate + 1e-12);
          if (ki > 0) {
            EXPECT_GE(t.cells[s][c].estimate + 1e-12, by_k[ki - 1].cells[s][c].estimate);
          }
        }
      }
    }
  }
}

// ---- aggregates -------------------------------------------------------------

TEST(AggregateTest, MinMeanMaxExample) {
  std::vector<RunRecord> records;
  for (int i = 0; i < 5; ++i) {
    records.push_back(MakeRun("f", "identity", i, 1, 1));
    records.push_back(MakeRun("f", "de-morgan", i, 1, 0));
  }
  std::vector<std::string> set = {"identity", "de-morgan"};
  EXPECT_DOUBLE_EQ(AggregateOverPerturbations(records, "m", set, AggregateKind::kMin, 5), 0.0);
  EXPECT_DOUBLE_EQ(AggregateOverPerturbations(records, "m", set, AggregateKind::kMean, 5), 0.5);
  EXPECT_DOUBLE_EQ(AggregateOverPerturbations(records, "m", set, AggregateKind::kMax, 5), 1.0);
  EXPECT_THROW(AggregateOverPerturbations(records, "m", {"identity", "loop-swap"},
                                          AggregateKind::kMin, 5),
               CoverageError);
}

TEST(AggregateTest, OrderingAndIdentityOnSyntheticLedgers) {
  SyntheticShape shape;
  shape.perturbations = {"identity", "loop-swap", "de-morgan", "dead-code"};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto records = SyntheticLedger(seed, shape);
    double lo = AggregateOverPerturbations(records, "model-a", shape.perturbations,
                                           AggregateKind::kMin, 5);
    double mid = AggregateOverPerturbations(records, "model-a", shape.perturbations,
                                            AggregateKind::kMean, 5);
    double hi = AggregateOverPerturbations(records, "model-a", shape.perturbations,
                                           AggregateKind::kMax, 5);
    EXPECT_LE(lo, mid + 1e-12);
    EXPECT_LE(mid, hi + 1e-12);
    RecordFilter identity;
    identity.perturbation = "identity";
    double plain = PassTableByIteration(records, identity, {CheckStage::kFuzzed}, {5}, 5)
                       .cells[0][0]
                       .estimate;
    for (AggregateKind kind : {AggregateKind::kMin, AggregateKind::kMean, AggregateKind::kMax}) {
      EXPECT_EQ(AggregateOverPerturbations(records, "model-a", {"identity"}, kind, 5), plain);
    }
  }
}

TEST(AggregateTest, SampledSets) {
  SyntheticShape shape;
  shape.perturbations = perturb::RegistryIds();
  shape.runs = 5;
  auto records = SyntheticLedger(7, shape);
  PassMatrix m = BuildPassMatrix(records, "model-a", shape.perturbations, 5);
  auto samples = SampleAggregates(m, 20, 10000, 1);
  ASSERT_EQ(samples.size(), 10000u);
  for (const SampledAggregate& s : samples) {
    EXPECT_LE(s.robust, s.mean + 1e-12);
    EXPECT_LE(s.mean, s.augmented + 1e-12);
    EXPECT_TRUE(std::count(s.set.begin(), s.set.end(), "identity"));
  }
  auto small = SampleAggregates(m, 5, 1000, 2);
  auto series = SampledAggregateSeries(small, 10);
  ASSERT_EQ(series.size(), 3u);
  for (const PlotSeries& s : series) EXPECT_EQ(s.histogram->total(), 1000u);
  nlohmann::ordered_json plot = PlotJson(series);
  EXPECT_EQ(plot["series"][0]["bins"].size(), 10u);
}

TEST(HistogramTest, BinsCoverTheRange) {
  Histogram h = MakeHistogram({0.0, 0.05, 0.1, 0.5, 0.99, 1.0}, 10);
  EXPECT_EQ(h.total(), 6u);
  EXPECT_EQ(h.bins[0], 2u);
  EXPECT_EQ(h.bins[1], 1u);
  EXPECT_EQ(h.bins[9], 2u);
  EXPECT_THROW(MakeHistogram({1.5}, 10), std::invalid_argument);
}

// ---- solved sets ---------------------------------------------------------

std::vector<RunRecord> Solving(const std::string& model, const std::set<std::string>& solved,
                               const std::vector<std::string>& corpus) {
  std::vector<RunRecord> out;
  for (const std::string& file : corpus) {
    for (int i = 0; i < 3; ++i) {
      RunRecord r = MakeRun(file, "identity", i, 1, solved.count(file) && i == 1 ? 1 : 0);
      r.model_id = model;
      out.push_back(r);
    }
  }
  return out;
}

TEST(SolvedSetsTest, TwoModels) {
  std::vector<std::string> corpus = {"a", "b", "c", "d"};
  SolvedSets s = ComputeSolvedSets(
      {{"m1", Solving("m1", {"a", "b"}, corpus)}, {"m2", Solving("m2", {"b", "c"}, corpus)}});
  EXPECT_EQ(s.union_size, 3u);
  EXPECT_EQ(s.unsolved, 1u);
  EXPECT_EQ(s.intersections.at({"m1", "m2"}), (std::set<std::string>{"b"}));
  EXPECT_EQ(s.regions.at({"m1"}), 1u);
  EXPECT_EQ(s.regions.at({"m1", "m2"}), 1u);
  EXPECT_EQ(SolvedSetsCsv(s), "region,files\nm1,1\nm1+m2,1\nm2,1\nunion,3\nunsolved,1\n");

  SolvedSets same = ComputeSolvedSets(
      {{"m1", Solving("m1", {"a", "b"}, corpus)}, {"m2", Solving("m2", {"a", "b"}, corpus)}});
  EXPECT_EQ(same.regions.size(), 1u);
  EXPECT_EQ(same.regions.at({"m1", "m2"}), 2u);
  EXPECT_THROW(ComputeSolvedSets({{"m1", Solving("m1", {}, corpus)},
                                  {"m2", Solving("m2", {}, {"a", "b"})}}),
               std::invalid_argument);
}

TEST(SolvedSetsTest, ThreeModelRegionsMatchDirectCounting) {
  std::mt19937_64 rng(5);
  std::vector<std::string> corpus;
  for (int i = 0; i < 40; ++i) corpus.push_back("f" + std::to_string(i));
  std::vector<std::string> models = {"x", "y", "z"};
  std::map<std::string, std::set<std::string>> engineered;
  for (const std::string& m : models) {
    for (const std::string& f : corpus) {
      if (rng() % 2) engineered[m].insert(f);
    }
  }
  std::map<std::string, std::vector<RunRecord>> per_model;
  for (const std::string& m : models) per_model[m] = Solving(m, engineered[m], corpus);
  SolvedSets s = ComputeSolvedSets(per_model);
  // Direct count by membership pattern.
  std::map<int, std::size_t> by_mask;
  for (const std::string& f : corpus) {
    int mask = 0;
    for (int i = 0; i < 3; ++i) mask |= engineered[models[i]].count(f) ? 1 << i : 0;
    ++by_mask[mask];
  }
  for (int mask = 1; mask < 8; ++mask) {
    std::vector<std::string> key;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1 << i)) key.push_back(models[i]);
    }
    std::size_t got = s.regions.count(key) ? s.regions.at(key) : 0;
    EXPECT_EQ(got, by_mask[mask]) << mask;
  }
  EXPECT_EQ(s.unsolved, by_mask[0]);
  EXPECT_EQ(s.intersections.size(), 4u);
}

// ---- tokens, failures, errors ----------------------------------------------

TEST(TokenCurveTest, SingleAttempt) {
  RunRecord r = MakeRun("f", "identity", 0, 1, 1);
  r.attempts[0].usage.completion = 100;
  TokenCurve c = TokenCostCurve({r}, {}, {1}, {1});
  ASSERT_EQ(c.points.size(), 1u);
  EXPECT_DOUBLE_EQ(c.points[0].tokens, 100);
  EXPECT_DOUBLE_EQ(c.points[0].pass, 1.0);
}

TEST(TokenCurveTest, ReasoningShiftsRightAndCurvesRise) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto records = SyntheticLedger(seed, {});
    TokenCurve with = TokenCostCurve(records, {}, {1, 5}, {1, 2, 3, 4, 5}, true);
    TokenCurve without = TokenCostCurve(records, {}, {1, 5}, {1, 2, 3, 4, 5}, false);
    ASSERT_EQ(with.points.size(), 10u);
    for (std::size_t i = 0; i < with.points.size(); ++i) {
      EXPECT_GE(with.points[i].tokens, without.points[i].tokens);
      EXPECT_EQ(with.points[i].pass, without.points[i].pass);
      if (i % 5 != 0) {
        EXPECT_GE(with.points[i].tokens, with.points[i - 1].tokens);
        EXPECT_GE(with.points[i].pass + 1e-12, with.points[i - 1].pass);
      }
    }
  }
}

TEST(FailureHistogramTest, CountsFailingStages) {
  std::vector<RunRecord> ok = {MakeRun("f", "identity", 0, 1, 1), MakeRun("g", "identity", 0, 1, 1)};
  FailureHistogram none = BuildFailureHistogram(ok);
  for (std::size_t i = 1; i <= 5; ++i) EXPECT_EQ(none.TotalAt(i), 0u);

  FailureHistogram once = BuildFailureHistogram({MakeRun("f", "identity", 0, 2, 2)});
  EXPECT_EQ(once.per_iteration[0].at("Compiled"), 1u);
  EXPECT_EQ(once.TotalAt(1), 1u);
  EXPECT_EQ(once.TotalAt(2), 0u);
  EXPECT_EQ(FailureHistogramCsv(once),
            "iteration,Compiled,Fuzzed,Linted,infra\n1,1,0,0,0\n2,0,0,0,0\n3,0,0,0,0\n"
            "4,0,0,0,0\n5,0,0,0,0\n");

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    FailureHistogram h = BuildFailureHistogram(SyntheticLedger(seed, {}));
    for (std::size_t i = 2; i <= 5; ++i) EXPECT_LE(h.TotalAt(i), h.TotalAt(i - 1));
  }
}

TEST(ErrorDistributionTest, Rates) {
  std::vector<RunRecord> records;
  for (int i = 0; i < 1000; ++i) {
    RunRecord r = MakeRun("f" + std::to_string(i % 10), "identity", i, 1, 0);
    if (i < 13) r.error_category = ErrorCategory::kFuzzingSetup;
    records.push_back(r);
  }
  auto rates = ErrorDistribution(records);
  EXPECT_EQ(rates[0].kind, "Identity");
  EXPECT_EQ(rates[0].runs, 1000u);
  EXPECT_DOUBLE_EQ(rates[0].Rate(ErrorCategory::kFuzzingSetup), 0.013);
  EXPECT_DOUBLE_EQ(rates[0].Rate(ErrorCategory::kLlmApi), 0.0);
  EXPECT_EQ(rates[1].runs, 0u);

  records.push_back(MakeRun("x", "dead-code", 0, 1, 0));
  records.back().error_category = ErrorCategory::kLlmApi;
  records.push_back(MakeRun("x", "loop-swap", 0, 1, 0));
  rates = ErrorDistribution(records);
  EXPECT_EQ(rates[1].runs, 1u);
  EXPECT_EQ(rates[2].runs, 1u);
  EXPECT_DOUBLE_EQ(rates[2].Rate(ErrorCategory::kLlmApi), 1.0);
  EXPECT_EQ(rates[3].runs, 1002u);
  for (const ErrorRates& r : rates) {
    double sum = 0;
    for (ErrorCategory c : kAllErrorCategories) sum += r.Rate(c);
    EXPECT_LE(sum, 1.0);
  }
  EXPECT_TRUE(StartsWith(ErrorDistributionCsv(rates),
                         "kind,runs,FuzzingSetup,FuzzingException,TranslationSystem,LlmApi\n"));
}

TEST(ReportTest, DeterministicFiles) {
  auto records = SyntheticLedger(3, {});
  Workdir dir("evalkit-test");
  for (int round = 0; round < 2; ++round) {
    PassTable t = PassTableByIteration(records, {});
    WriteReport(dir.path() / std::to_string(round), "pass.csv", PassTableCsv(t));
    WriteReport(dir.path() / std::to_string(round), "pass.json", PassTableJson(t).dump(2));
    WriteReport(dir.path() / std::to_string(round), "tokens.json",
                PlotJson(TokenCurveSeries(TokenCostCurve(records, {}, {1, 5}, {1, 2, 3})))
                    .dump(2));
  }
  for (const char* name : {"pass.csv", "pass.json", "tokens.json"}) {
    EXPECT_EQ(ReadFile(dir.path() / "0" / name), ReadFile(dir.path() / "1" / name)) << name;
  }
  EXPECT_THROW(WriteReport("/proc/no/such/dir", "x.csv", "x"), std::runtime_error);
}

}  // namespace
}  // namespace transcheck::evalkit
