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

#include "transcheck/pipeline/ledger.h"

#include <system_error>

#include "transcheck/support/text.h"

namespace transcheck::pipeline {

namespace fs = std::filesystem;

nlohmann::ordered_json ToJson(const ExperimentMetadata& meta) {
  nlohmann::ordered_json j;
  j["type"] = "experiment";
  j["schema"] = meta.schema;
  j["config_hash"] = meta.config_hash;
  j["models"] = meta.models;
  j["perturbations"] = meta.perturbations;
  j["runs_per_cell"] = meta.runs_per_cell;
  j["max_iterations"] = meta.max_iterations;
  j["checker"] = meta.checker;
  j["versions"] = meta.versions;
  j["seed_rule"] = meta.seed_rule;
  return j;
}

ExperimentMetadata ExperimentMetadataFromJson(const nlohmann::json& j) {
  try {
    ExperimentMetadata m;
    m.schema = j.at("schema").get<int>();
    m.config_hash = j.value("config_hash", "");
    m.models = j.value("models", std::vector<std::string>{});
    m.perturbations = j.value("perturbations", std::vector<std::string>{});
    m.runs_per_cell = j.value("runs_per_cell", 20);
    m.max_iterations = j.value("max_iterations", 5);
    m.checker = j.value("checker", "");
    m.versions = j.value("versions", std::map<std::string, std::string>{});
    m.seed_rule = j.value("seed_rule", m.seed_rule);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw LedgerError(std::string("malformed ledger metadata: ") + e.what());
  }
}

namespace {

// Also reports the byte length of the well-formed prefix.
LedgerContents Parse(const fs::path& path, std::size_t* valid_bytes) {
  LedgerContents contents;
  auto text = ReadFile(path);
  if (!text) throw LedgerError("cannot read ledger " + path.string());
  std::set<RunKey> keys;
  std::size_t pos = 0;
  int line_no = 0;
  *valid_bytes = 0;
  while (pos < text->size()) {
    std::size_t end = text->find('\n', pos);
    bool complete = end != std::string::npos;
    std::string_view line(text->data() + pos, (complete ? end : text->size()) - pos);
    ++line_no;
    std::size_t next = complete ? end + 1 : text->size();
    if (Trim(line).empty()) {
      pos = next;
      if (complete) *valid_bytes = pos;
      continue;
    }
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !complete) {
      if (next == text->size()) {
        contents.warnings.push_back(path.string() + ":" + std::to_string(line_no) +
                                    ": dropped a truncated last line");
        break;
      }
      throw LedgerError(path.string() + ":" + std::to_string(line_no) +
                        ": not valid JSON");
    }
    std::string type = j.value("type", "run");
    if (type == "experiment") {
      if (contents.metadata) {
        throw LedgerError(path.string() + ": more than one experiment line");
      }
      contents.metadata = ExperimentMetadataFromJson(j);
    } else {
      RunRecord record;
      try {
        record = RunRecordFromJson(j);
      } catch (const std::invalid_argument& e) {
        throw LedgerError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (!keys.insert(record.key()).second) {
        throw LedgerError(path.string() + ":" + std::to_string(line_no) +
                          ": duplicate run " + record.key().ToString());
      }
      contents.records.push_back(std::move(record));
    }
    pos = next;
    *valid_bytes = pos;
  }
  return contents;
}

}  // namespace

LedgerContents ReadLedger(const fs::path& path) {
  std::size_t valid = 0;
  return Parse(path, &valid);
}

Ledger::Ledger(fs::path path, LedgerContents contents)
    : path_(std::move(path)),
      records_(std::move(contents.records)),
      warnings_(std::move(contents.warnings)) {
  for (const RunRecord& r : records_) keys_.insert(r.key());
}

Ledger::Ledger(Ledger&& other) noexcept
    : path_(std::move(other.path_)),
      out_(std::move(other.out_)),
      records_(std::move(other.records_)),
      keys_(std::move(other.keys_)),
      warnings_(std::move(other.warnings_)) {}

Ledger Ledger::Open(const fs::path& path, const ExperimentMetadata& metadata) {
  std::error_code ec;
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path(), ec);
  LedgerContents contents;
  bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  if (!fresh) {
    std::size_t valid = 0;
    contents = Parse(path, &valid);
    if (!contents.metadata) throw LedgerError(path.string() + ": no experiment line");
    if (!(*contents.metadata == metadata)) {
      throw LedgerError(path.string() +
                        ": written by a different experiment configuration (config hash " +
                        contents.metadata->config_hash + ", expected " +
                        metadata.config_hash + ")");
    }
    if (valid < fs::file_size(path)) fs::resize_file(path, valid);
  }
  Ledger ledger(path, std::move(contents));
  ledger.out_.open(path, std::ios::binary | std::ios::app);
  if (!ledger.out_) throw LedgerError("cannot write ledger " + path.string());
  if (fresh) {
    ledger.out_ << ToJson(metadata).dump() << '\n';
    ledger.out_.flush();
  }
  return ledger;
}

bool Ledger::Contains(const RunKey& key) const {
  std::lock_guard lock(mu_);
  return keys_.count(key) > 0;
}

void Ledger::Append(const RunRecord& record) {
  std::lock_guard lock(mu_);
  if (!keys_.insert(record.key()).second) {
    throw LedgerError("duplicate run " + record.key().ToString());
  }
  out_ << ToJson(record).dump() << '\n';
  out_.flush();
  if (!out_) throw LedgerError("write failed: " + path_.string());
  records_.push_back(record);
}

std::vector<RunRecord> Ledger::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::size_t Ledger::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

}  // namespace transcheck::pipeline
