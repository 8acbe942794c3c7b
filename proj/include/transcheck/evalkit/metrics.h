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

#ifndef TRANSCHECK_EVALKIT_METRICS_H_
#define TRANSCHECK_EVALKIT_METRICS_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "transcheck/checkers/check_report.h"
#include "transcheck/pipeline/records.h"

namespace transcheck::evalkit {

using checkers::CheckStage;
using pipeline::RunRecord;

// Unbiased estimator 1 - C(n-c, k) / C(n, k), as a product of ratios.
// Throws std::invalid_argument unless 0 <= c <= n and 1 <= k <= n.
double PassAtK(int n, int c, int k);

enum class AggregateKind { kMin, kMean, kMax };

// "robust", "mean", "augmented".
std::string_view ToString(AggregateKind kind);

class CoverageError : public std::runtime_error {
 public:
  explicit CoverageError(std::vector<std::string> gaps);
  const std::vector<std::string>& gaps() const { return gaps_; }

 private:
  std::vector<std::string> gaps_;
};

struct RecordFilter {
  std::optional<std::string> model;
  std::optional<std::string> perturbation;
  std::optional<std::set<std::string>> sources;

  bool Matches(const RunRecord& r) const;
};

// "Compilation success", "Lint success", "Final result".
std::string_view StageLabel(CheckStage stage);

struct PassCell {
  double estimate = 0;
  std::size_t files = 0;     // files that entered the average
  std::size_t excluded = 0;  // non-fuzzable files left out of Fuzzed cells
  bool incomplete = false;   // some file had fewer than k runs
  std::vector<std::string> gaps;
};

struct PassTable {
  int k = 5;
  std::vector<int> caps;
  std::vector<CheckStage> stages;
  std::vector<std::vector<PassCell>> cells;  // [stage][cap]
};

// A run counts for (stage, cap) when it first reached the stage within
// `cap` iterations. pass@k per file, then averaged over files.
PassTable PassTableByIteration(
    const std::vector<RunRecord>& records, const RecordFilter& filter,
    const std::vector<CheckStage>& stages = {CheckStage::kCompiled,
                                             CheckStage::kFuzzed},
    const std::vector<int>& caps = {1, 2, 3, 4, 5}, int k = 5);

// pass@k of every (file, perturbation) pair at the given stage and cap.
// Throws CoverageError when a pair has fewer than k runs.
struct PassMatrix {
  std::vector<std::string> files;
  std::vector<std::string> perturbations;
  std::vector<std::vector<double>> values;  // [file][perturbation]
  std::size_t excluded = 0;
};

PassMatrix BuildPassMatrix(const std::vector<RunRecord>& records,
                           const std::optional<std::string>& model,
                           const std::vector<std::string>& perturbations,
                           int k, CheckStage stage = CheckStage::kFuzzed,
                           int cap = 1 << 30);

// Per file min/mean/max over the perturbations, then averaged over files.
double Aggregate(const PassMatrix& matrix, const std::vector<std::size_t>& columns,
                 AggregateKind kind);
double AggregateOverPerturbations(const std::vector<RunRecord>& records,
                                  const std::optional<std::string>& model,
                                  const std::vector<std::string>& perturbations,
                                  AggregateKind kind, int k);

struct SampledAggregate {
  std::vector<std::string> set;
  double robust = 0;
  double mean = 0;
  double augmented = 0;
};

// `count` random perturbation sets of `set_size` (Identity always in), each
// scored with all three aggregates.
std::vector<SampledAggregate> SampleAggregates(const PassMatrix& matrix,
                                               std::size_t set_size,
                                               std::size_t count,
                                               std::uint64_t seed);

struct Histogram {
  double lo = 0;
  double hi = 1;
  std::vector<std::size_t> bins;  // the last bin is closed on the right

  std::size_t total() const;
};

Histogram MakeHistogram(const std::vector<double>& values, std::size_t bins,
                        double lo = 0, double hi = 1);

struct SolvedSets {
  std::vector<std::string> models;
  std::set<std::string> corpus;
  std::map<std::string, std::set<std::string>> solved;
  std::size_t union_size = 0;
  // Files solved by every model of the key (two or more models).
  std::map<std::vector<std::string>, std::set<std::string>> intersections;
  // Files solved by exactly the models of the key (Venn regions).
  std::map<std::vector<std::string>, std::size_t> regions;
  std::size_t unsolved = 0;
};

// A file is solved by a model when at least one of its runs succeeded.
// Throws std::invalid_argument when the models saw different files.
SolvedSets ComputeSolvedSets(
    const std::map<std::string, std::vector<RunRecord>>& per_model);

struct CurvePoint {
  int cap = 0;
  int k = 0;
  double tokens = 0;  // generated tokens of attempts up to the cap
  double pass = 0;
  bool incomplete = false;
};

struct TokenCurve {
  std::vector<CurvePoint> points;
  std::size_t runs_without_usage = 0;  // left out of the token sums
};

TokenCurve TokenCostCurve(const std::vector<RunRecord>& records,
                          const RecordFilter& filter,
                          const std::vector<int>& ks,
                          const std::vector<int>& caps,
                          bool include_reasoning = true);

struct FailureHistogram {
  // [iteration - 1] → counts keyed by "Compiled", "Linted", "Fuzzed",
  // "infra".
  std::vector<std::map<std::string, std::size_t>> per_iteration;

  std::size_t TotalAt(std::size_t iteration) const;
};

FailureHistogram BuildFailureHistogram(const std::vector<RunRecord>& records,
                                       int max_iterations = 5);

struct ErrorRates {
  std::string kind;  // "Identity", "Deterministic", "Stochastic", "All"
  std::size_t runs = 0;
  std::map<ErrorCategory, std::size_t> counts;

  double Rate(ErrorCategory category) const;
};

std::vector<ErrorRates> ErrorDistribution(const std::vector<RunRecord>& records);

}  // namespace transcheck::evalkit

#endif  // TRANSCHECK_EVALKIT_METRICS_H_
