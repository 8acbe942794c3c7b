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

#include "transcheck/evalkit/metrics.h"

#include <algorithm>
#include <cmath>

#include "transcheck/perturb/perturbation.h"
#include "transcheck/support/text.h"

namespace transcheck::evalkit {

double PassAtK(int n, int c, int k) {
  if (n < 0 || c < 0 || c > n) {
    throw std::invalid_argument("pass@k needs 0 <= c <= n");
  }
  if (k < 1 || k > n) throw std::invalid_argument("pass@k needs 1 <= k <= n");
  if (n - c < k) return 1.0;
  double fail = 1.0;
  for (int i = n - c + 1; i <= n; ++i) {
    fail *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - fail;
}

std::string_view ToString(AggregateKind kind) {
  switch (kind) {
    case AggregateKind::kMin:
      return "robust";
    case AggregateKind::kMean:
      return "mean";
    case AggregateKind::kMax:
      return "augmented";
  }
  return "?";
}

CoverageError::CoverageError(std::vector<std::string> gaps)
    : std::runtime_error("missing coverage: " + Join(gaps, "; ")), gaps_(std::move(gaps)) {}

bool RecordFilter::Matches(const RunRecord& r) const {
  if (model && r.model_id != *model) return false;
  if (perturbation && r.perturbation_id != *perturbation) return false;
  if (sources && !sources->count(r.source_id)) return false;
  return true;
}

std::string_view StageLabel(CheckStage stage) {
  switch (stage) {
    case CheckStage::kCompiled:
      return "Compilation success";
    case CheckStage::kLinted:
      return "Lint success";
    case CheckStage::kFuzzed:
      return "Final result";
  }
  return "?";
}

namespace {

// Runs grouped by file, in file order.
std::map<std::string, std::vector<const RunRecord*>> ByFile(
    const std::vector<RunRecord>& records, const RecordFilter& filter) {
  std::map<std::string, std::vector<const RunRecord*>> files;
  for (const RunRecord& r : records) {
    if (filter.Matches(r)) files[r.source_id].push_back(&r);
  }
  return files;
}

bool Fuzzable(const std::vector<const RunRecord*>& runs) {
  return std::all_of(runs.begin(), runs.end(), [](const RunRecord* r) { return r->fuzzable; });
}

int Successes(const std::vector<const RunRecord*>& runs, CheckStage stage, int cap) {
  int c = 0;
  for (const RunRecord* r : runs) c += r->ReachedWithin(stage, cap) ? 1 : 0;
  return c;
}

}  // namespace

PassTable PassTableByIteration(const std::vector<RunRecord>& records,
                               const RecordFilter& filter,
                               const std::vector<CheckStage>& stages,
                               const std::vector<int>& caps, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  PassTable table;
  table.k = k;
  table.caps = caps;
  table.stages = stages;
  auto files = ByFile(records, filter);
  for (CheckStage stage : stages) {
    std::vector<PassCell> row;
    for (int cap : caps) {
      PassCell cell;
      double sum = 0;
      for (const auto& [id, runs] : files) {
        if (stage == CheckStage::kFuzzed && !Fuzzable(runs)) {
          ++cell.excluded;
          continue;
        }
        int n = static_cast<int>(runs.size());
        if (n < k) {
          cell.incomplete = true;
          cell.gaps.push_back(id + ": " + std::to_string(n) + " run(s), k = " +
                              std::to_string(k));
          continue;
        }
        sum += PassAtK(n, Successes(runs, stage, cap), k);
        ++cell.files;
      }
      if (cell.files == 0) {
        cell.incomplete = true;
      } else {
        cell.estimate = sum / static_cast<double>(cell.files);
      }
      row.push_back(std::move(cell));
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

PassMatrix BuildPassMatrix(const std::vector<RunRecord>& records,
                           const std::optional<std::string>& model,
                           const std::vector<std::string>& perturbations, int k,
                           CheckStage stage, int cap) {
  PassMatrix m;
  m.perturbations = perturbations;
  std::map<std::string, std::map<std::string, std::vector<const RunRecord*>>> cells;
  std::set<std::string> files;
  for (const RunRecord& r : records) {
    if (model && r.model_id != *model) continue;
    files.insert(r.source_id);
    cells[r.source_id][r.perturbation_id].push_back(&r);
  }
  std::vector<std::string> gaps;
  for (const std::string& file : files) {
    std::vector<const RunRecord*> all;
    for (const auto& [pid, runs] : cells[file]) all.insert(all.end(), runs.begin(), runs.end());
    if (stage == CheckStage::kFuzzed && !Fuzzable(all)) {
      ++m.excluded;
      continue;
    }
    std::vector<double> row;
    for (const std::string& pid : perturbations) {
      const auto& runs = cells[file][pid];
      int n = static_cast<int>(runs.size());
      if (n < k) {
        gaps.push_back(file + " × " + pid + ": " + std::to_string(n) + " run(s), k = " +
                       std::to_string(k));
        continue;
      }
      row.push_back(PassAtK(n, Successes(runs, stage, cap), k));
    }
    m.files.push_back(file);
    m.values.push_back(std::move(row));
  }
  if (!gaps.empty()) throw CoverageError(std::move(gaps));
  return m;
}

double Aggregate(const PassMatrix& matrix, const std::vector<std::size_t>& columns,
                 AggregateKind kind) {
  if (columns.empty()) throw std::invalid_argument("empty perturbation set");
  if (matrix.files.empty()) return 0;
  double sum = 0;
  for (const auto& row : matrix.values) {
    double lo = 1, hi = 0, total = 0;
    for (std::size_t c : columns) {
      double v = row.at(c);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      total += v;
    }
    switch (kind) {
      case AggregateKind::kMin:
        sum += lo;
        break;
      case AggregateKind::kMean:
        sum += total / static_cast<double>(columns.size());
        break;
      case AggregateKind::kMax:
        sum += hi;
        break;
    }
  }
  return sum / static_cast<double>(matrix.files.size());
}

double AggregateOverPerturbations(const std::vector<RunRecord>& records,
                                  const std::optional<std::string>& model,
                                  const std::vector<std::string>& perturbations,
                                  AggregateKind kind, int k) {
  PassMatrix m = BuildPassMatrix(records, model, perturbations, k);
  std::vector<std::size_t> all(perturbations.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Aggregate(m, all, kind);
}

std::vector<SampledAggregate> SampleAggregates(const PassMatrix& matrix,
                                               std::size_t set_size, std::size_t count,
                                               std::uint64_t seed) {
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < matrix.perturbations.size(); ++i) {
    column[matrix.perturbations[i]] = i;
  }
  std::vector<SampledAggregate> out;
  out.reserve(count);
  for (auto& set : perturb::SampleSets(matrix.perturbations, set_size, count, seed)) {
    std::vector<std::size_t> cols;
    for (const std::string& id : set) cols.push_back(column.at(id));
    SampledAggregate a;
    a.robust = Aggregate(matrix, cols, AggregateKind::kMin);
    a.mean = Aggregate(matrix, cols, AggregateKind::kMean);
    a.augmented = Aggregate(matrix, cols, AggregateKind::kMax);
    a.set = std::move(set);
    out.push_back(std::move(a));
  }
  return out;
}

std::size_t Histogram::total() const {
  std::size_t t = 0;
  for (std::size_t b : bins) t += b;
  return t;
}

Histogram MakeHistogram(const std::vector<double>& values, std::size_t bins, double lo,
                        double hi) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("bad histogram range");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.bins.assign(bins, 0);
  for (double v : values) {
    if (v < lo || v > hi || std::isnan(v)) {
      throw std::invalid_argument("histogram value out of range");
    }
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    ++h.bins[std::min(b, bins - 1)];
  }
  return h;
}

SolvedSets ComputeSolvedSets(const std::map<std::string, std::vector<RunRecord>>& per_model) {
  if (per_model.empty()) throw std::invalid_argument("no models given");
  SolvedSets s;
  std::optional<std::set<std::string>> corpus;
  for (const auto& [model, records] : per_model) {
    s.models.push_back(model);
    std::set<std::string> files;
    std::set<std::string>& solved = s.solved[model];
    for (const RunRecord& r : records) {
      files.insert(r.source_id);
      if (r.success) solved.insert(r.source_id);
    }
    if (corpus && *corpus != files) {
      throw std::invalid_argument("model " + model + " was run on a different corpus");
    }
    corpus = std::move(files);
  }
  s.corpus = *corpus;
  const std::size_t m = s.models.size();
  if (m > 16) throw std::invalid_argument("too many models for region counts");
  for (const std::string& file : s.corpus) {
    std::vector<std::string> who;
    for (const std::string& model : s.models) {
      if (s.solved[model].count(file)) who.push_back(model);
    }
    if (who.empty()) {
      ++s.unsolved;
      continue;
    }
    ++s.union_size;
    ++s.regions[who];
  }
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    std::vector<std::string> key;
    std::set<std::string> common = s.corpus;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (1u << i))) continue;
      key.push_back(s.models[i]);
      std::set<std::string> next;
      std::set_intersection(common.begin(), common.end(), s.solved[s.models[i]].begin(),
                            s.solved[s.models[i]].end(), std::inserter(next, next.end()));
      common = std::move(next);
    }
    s.intersections[key] = std::move(common);
  }
  return s;
}

TokenCurve TokenCostCurve(const std::vector<RunRecord>& records, const RecordFilter& filter,
                          const std::vector<int>& ks, const std::vector<int>& caps,
                          bool include_reasoning) {
  TokenCurve curve;
  std::vector<const RunRecord*> usable;
  for (const RunRecord& r : records) {
    if (!filter.Matches(r)) continue;
    bool missing = std::any_of(r.attempts.begin(), r.attempts.end(), [](const auto& a) {
      return a.usage.prompt == 0 && a.usage.completion == 0;
    });
    if (missing) {
      ++curve.runs_without_usage;
    } else {
      usable.push_back(&r);
    }
  }
  for (int k : ks) {
    PassTable table = PassTableByIteration(records, filter, {CheckStage::kFuzzed}, caps, k);
    for (std::size_t i = 0; i < caps.size(); ++i) {
      CurvePoint p;
      p.cap = caps[i];
      p.k = k;
      for (const RunRecord* r : usable) {
        for (const auto& a : r->attempts) {
          if (a.iteration > caps[i]) break;
          p.tokens += static_cast<double>(include_reasoning ? a.usage.generated()
                                                            : a.usage.completion);
        }
      }
      p.pass = table.cells[0][i].estimate;
      p.incomplete = table.cells[0][i].incomplete;
      curve.points.push_back(p);
    }
  }
  return curve;
}

std::size_t FailureHistogram::TotalAt(std::size_t iteration) const {
  std::size_t total = 0;
  if (iteration == 0 || iteration > per_iteration.size()) return 0;
  for (const auto& [label, n] : per_iteration[iteration - 1]) total += n;
  return total;
}

FailureHistogram BuildFailureHistogram(const std::vector<RunRecord>& records,
                                       int max_iterations) {
  FailureHistogram h;
  std::map<std::string, std::size_t> zero;
  for (CheckStage stage : checkers::kAllStages) zero[std::string(checkers::ToString(stage))] = 0;
  zero["infra"] = 0;
  h.per_iteration.assign(static_cast<std::size_t>(std::max(max_iterations, 0)), zero);
  for (const RunRecord& r : records) {
    for (const auto& a : r.attempts) {
      if (a.iteration < 1 || a.iteration > max_iterations) continue;
      auto& row = h.per_iteration[static_cast<std::size_t>(a.iteration - 1)];
      if (!a.reports.empty() && a.reports.back().infra_error) {
        ++row["infra"];
      } else if (auto stage = a.failed_stage()) {
        ++row[std::string(checkers::ToString(*stage))];
      }
    }
  }
  return h;
}

double ErrorRates::Rate(ErrorCategory category) const {
  if (runs == 0) return 0;
  auto it = counts.find(category);
  return it == counts.end() ? 0.0
                            : static_cast<double>(it->second) / static_cast<double>(runs);
}

std::vector<ErrorRates> ErrorDistribution(const std::vector<RunRecord>& records) {
  std::vector<ErrorRates> groups(4);
  groups[0].kind = "Identity";
  groups[1].kind = "Deterministic";
  groups[2].kind = "Stochastic";
  groups[3].kind = "All";
  for (ErrorRates& g : groups) {
    for (ErrorCategory c : kAllErrorCategories) g.counts[c] = 0;
  }
  for (const RunRecord& r : records) {
    const perturb::PerturbationSpec* spec = perturb::FindPerturbation(r.perturbation_id);
    // Unknown ids only count towards "All".
    std::size_t g = 3;
    if (spec != nullptr) {
      g = spec->identity() ? 0 : spec->mode == perturb::Mode::kStochastic ? 2 : 1;
    }
    std::vector<std::size_t> targets = {3};
    if (g != 3) targets.push_back(g);
    for (std::size_t target : targets) {
      ++groups[target].runs;
      if (r.error_category) ++groups[target].counts[*r.error_category];
    }
  }
  return groups;
}

}  // namespace transcheck::evalkit
