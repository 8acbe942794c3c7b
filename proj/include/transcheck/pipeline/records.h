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

#ifndef TRANSCHECK_PIPELINE_RECORDS_H_
#define TRANSCHECK_PIPELINE_RECORDS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "transcheck/checkers/check_report.h"
#include "transcheck/llm/chat.h"
#include "transcheck/support/error_category.h"

namespace transcheck::pipeline {

inline constexpr int kLedgerSchemaVersion = 1;

struct AttemptRecord {
  int iteration = 1;  // 1-based
  std::string rust_source;
  bool fenced = false;  // code came from a fenced block
  // Compile, then Lint, then Fuzz; stops at the first failure.
  std::vector<checkers::CheckReport> reports;
  llm::TokenUsage usage;
  double wall_time = 0;  // seconds

  bool succeeded() const;
  // Stage of the last report when it did not succeed.
  std::optional<checkers::CheckStage> failed_stage() const;
};

struct RunKey {
  std::string source_id;
  std::string perturbation_id;
  std::string model_id;
  int run_index = 0;

  auto operator<=>(const RunKey&) const = default;
  std::string ToString() const;
};

struct RunRecord {
  std::string source_id;
  std::string perturbation_id;
  std::string model_id;
  int run_index = 0;
  std::optional<std::uint64_t> perturbation_seed;
  // False when the C input has nothing the harness can drive.
  bool fuzzable = true;
  std::vector<AttemptRecord> attempts;
  std::map<checkers::CheckStage, int> first_iteration;
  bool success = false;
  std::optional<ErrorCategory> error_category;
  std::string error_detail;
  double wall_time = 0;

  RunKey key() const;
  llm::TokenUsage TotalUsage() const;
  // Reached `stage` within the first `cap` iterations.
  bool ReachedWithin(checkers::CheckStage stage, int cap) const;
  // Throws std::logic_error when the record breaks its invariants.
  void Validate(int max_iterations) const;
};

nlohmann::ordered_json ToJson(const AttemptRecord& attempt);
AttemptRecord AttemptRecordFromJson(const nlohmann::json& j);
nlohmann::ordered_json ToJson(const RunRecord& record);
// Throws std::invalid_argument on malformed input.
RunRecord RunRecordFromJson(const nlohmann::json& j);

// Mean number of iterations: total attempts / total runs.
double MeanIterations(const std::vector<RunRecord>& records);

}  // namespace transcheck::pipeline

#endif  // TRANSCHECK_PIPELINE_RECORDS_H_
