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

#ifndef TRANSCHECK_PIPELINE_LEDGER_H_
#define TRANSCHECK_PIPELINE_LEDGER_H_

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "transcheck/pipeline/records.h"

namespace transcheck::pipeline {

class LedgerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentMetadata {
  int schema = kLedgerSchemaVersion;
  std::string config_hash;
  std::vector<std::string> models;
  std::vector<std::string> perturbations;
  int runs_per_cell = 20;
  int max_iterations = 5;
  std::string checker;
  std::map<std::string, std::string> versions;
  // How stochastic perturbation seeds are derived.
  std::string seed_rule = "fnv1a64(source_id, perturbation_id, run_index)";

  bool operator==(const ExperimentMetadata&) const = default;
};

nlohmann::ordered_json ToJson(const ExperimentMetadata& meta);
ExperimentMetadata ExperimentMetadataFromJson(const nlohmann::json& j);

struct LedgerContents {
  std::optional<ExperimentMetadata> metadata;
  std::vector<RunRecord> records;
  std::vector<std::string> warnings;
};

// Reads a JSON-lines ledger. A truncated last line (an interrupted append)
// becomes a warning; any other malformed line throws LedgerError.
LedgerContents ReadLedger(const std::filesystem::path& path);

// Append-only writer. Opening an existing ledger checks that its metadata
// matches and drops a truncated last line.
class Ledger {
 public:
  static Ledger Open(const std::filesystem::path& path,
                     const ExperimentMetadata& metadata);

  Ledger(Ledger&& other) noexcept;

  bool Contains(const RunKey& key) const;
  // Throws LedgerError on a duplicate key. Each line is flushed before
  // returning.
  void Append(const RunRecord& record);

  std::vector<RunRecord> records() const;
  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Ledger(std::filesystem::path path, LedgerContents contents);

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::ofstream out_;
  std::vector<RunRecord> records_;
  std::set<RunKey> keys_;
  std::vector<std::string> warnings_;
};

}  // namespace transcheck::pipeline

#endif  // TRANSCHECK_PIPELINE_LEDGER_H_
