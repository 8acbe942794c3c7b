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

#include "transcheck/pipeline/records.h"

#include <stdexcept>

#include <fmt/core.h>

namespace transcheck::pipeline {

using checkers::CheckStage;

bool AttemptRecord::succeeded() const {
  return !reports.empty() && reports.back().stage == CheckStage::kFuzzed &&
         reports.back().success;
}

std::optional<CheckStage> AttemptRecord::failed_stage() const {
  if (reports.empty() || reports.back().success) return std::nullopt;
  return reports.back().stage;
}

std::string RunKey::ToString() const {
  return fmt::format("{}|{}|{}|{}", source_id, perturbation_id, model_id, run_index);
}

RunKey RunRecord::key() const {
  return RunKey{source_id, perturbation_id, model_id, run_index};
}

llm::TokenUsage RunRecord::TotalUsage() const {
  llm::TokenUsage total;
  for (const AttemptRecord& a : attempts) total += a.usage;
  return total;
}

bool RunRecord::ReachedWithin(CheckStage stage, int cap) const {
  auto it = first_iteration.find(stage);
  return it != first_iteration.end() && it->second <= cap;
}

void RunRecord::Validate(int max_iterations) const {
  auto fail = [this](const std::string& what) {
    throw std::logic_error(key().ToString() + ": " + what);
  };
  if (static_cast<int>(attempts.size()) > max_iterations) {
    fail("more attempts than the iteration budget");
  }
  for (std::size_t i = 0; i < attempts.size(); ++i) {
    if (attempts[i].iteration != static_cast<int>(i) + 1) fail("iterations out of order");
    const auto& reports = attempts[i].reports;
    for (std::size_t r = 0; r < reports.size(); ++r) {
      if (static_cast<std::size_t>(reports[r].stage) != r) fail("reports out of stage order");
      reports[r].Validate();
    }
  }
  bool any_success = false;
  for (const AttemptRecord& a : attempts) any_success |= a.succeeded();
  if (success != any_success) fail("success flag disagrees with the attempts");
  if (success && error_category) fail("successful run with an error category");
  int previous = 0;
  bool gap = false;
  for (CheckStage stage : checkers::kAllStages) {
    auto it = first_iteration.find(stage);
    if (it == first_iteration.end()) {
      gap = true;
      continue;
    }
    if (gap || it->second < previous) fail("first iterations not monotone");
    previous = it->second;
  }
}

nlohmann::ordered_json ToJson(const AttemptRecord& attempt) {
  nlohmann::ordered_json j;
  j["iteration"] = attempt.iteration;
  j["rust_source"] = attempt.rust_source;
  j["fenced"] = attempt.fenced;
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : attempt.reports) {
    j["reports"].push_back(nlohmann::ordered_json::parse(checkers::ToJson(r).dump()));
  }
  j["usage"] = nlohmann::ordered_json::parse(llm::ToJson(attempt.usage).dump());
  j["wall_time"] = attempt.wall_time;
  return j;
}

AttemptRecord AttemptRecordFromJson(const nlohmann::json& j) {
  AttemptRecord a;
  a.iteration = j.at("iteration").get<int>();
  a.rust_source = j.at("rust_source").get<std::string>();
  a.fenced = j.value("fenced", false);
  for (const auto& r : j.at("reports")) a.reports.push_back(checkers::CheckReportFromJson(r));
  a.usage = llm::TokenUsageFromJson(j.at("usage"));
  a.wall_time = j.value("wall_time", 0.0);
  return a;
}

nlohmann::ordered_json ToJson(const RunRecord& record) {
  nlohmann::ordered_json j;
  j["type"] = "run";
  j["schema"] = kLedgerSchemaVersion;
  j["source_id"] = record.source_id;
  j["perturbation_id"] = record.perturbation_id;
  j["model_id"] = record.model_id;
  j["run_index"] = record.run_index;
  j["perturbation_seed"] = record.perturbation_seed
                               ? nlohmann::ordered_json(*record.perturbation_seed)
                               : nlohmann::ordered_json(nullptr);
  j["fuzzable"] = record.fuzzable;
  j["success"] = record.success;
  j["error_category"] = record.error_category
                            ? nlohmann::ordered_json(ToString(*record.error_category))
                            : nlohmann::ordered_json(nullptr);
  j["error_detail"] = record.error_detail;
  nlohmann::ordered_json first = nlohmann::ordered_json::object();
  for (const auto& [stage, iteration] : record.first_iteration) {
    first[std::string(checkers::ToString(stage))] = iteration;
  }
  j["first_iteration_per_stage"] = first;
  j["wall_time"] = record.wall_time;
  j["attempts"] = nlohmann::ordered_json::array();
  for (const AttemptRecord& a : record.attempts) j["attempts"].push_back(ToJson(a));
  return j;
}

RunRecord RunRecordFromJson(const nlohmann::json& j) {
  try {
    if (j.value("type", "run") != "run") throw std::invalid_argument("not a run record");
    int schema = j.value("schema", kLedgerSchemaVersion);
    if (schema != kLedgerSchemaVersion) {
      throw std::invalid_argument("unsupported schema version " + std::to_string(schema));
    }
    RunRecord r;
    r.source_id = j.at("source_id").get<std::string>();
    r.perturbation_id = j.at("perturbation_id").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.run_index = j.at("run_index").get<int>();
    if (j.contains("perturbation_seed") && !j["perturbation_seed"].is_null()) {
      r.perturbation_seed = j["perturbation_seed"].get<std::uint64_t>();
    }
    r.fuzzable = j.value("fuzzable", true);
    r.success = j.at("success").get<bool>();
    if (j.contains("error_category") && !j["error_category"].is_null()) {
      auto category = ParseErrorCategory(j["error_category"].get<std::string>());
      if (!category) throw std::invalid_argument("unknown error category");
      r.error_category = *category;
    }
    r.error_detail = j.value("error_detail", "");
    for (const auto& [name, iteration] : j.at("first_iteration_per_stage").items()) {
      auto stage = checkers::ParseCheckStage(name);
      if (!stage) throw std::invalid_argument("unknown stage " + name);
      r.first_iteration[*stage] = iteration.get<int>();
    }
    r.wall_time = j.value("wall_time", 0.0);
    for (const auto& a : j.at("attempts")) r.attempts.push_back(AttemptRecordFromJson(a));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed run record: ") + e.what());
  }
}

double MeanIterations(const std::vector<RunRecord>& records) {
  if (records.empty()) return 0;
  std::size_t attempts = 0;
  for (const RunRecord& r : records) attempts += r.attempts.size();
  return static_cast<double>(attempts) / static_cast<double>(records.size());
}

}  // namespace transcheck::pipeline
