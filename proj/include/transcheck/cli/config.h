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

#ifndef TRANSCHECK_CLI_CONFIG_H_
#define TRANSCHECK_CLI_CONFIG_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "transcheck/checkers/config.h"
#include "transcheck/llm/chat.h"

namespace transcheck::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSelfCheck = 3;
inline constexpr int kExitCoverage = 4;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CheckerKind { kToolchain, kSimulated };

// Experiment config, read from `key = value` lines:
//
//   workspace = .                  # root for relative paths
//   corpus = corpus
//   groups = groups.txt
//   ledger = out/ledger.jsonl
//   reports = out/reports
//   perturbations = identity, de-morgan    # or all / deterministic / offline
//   runs = 20
//   k = 5
//   max_iterations = 5
//   parallelism = 1
//   checker = toolchain            # or simulated
//   simulated_rules = rules.json
//   checkers.fuzz_timeout = 60     # see checkers config
//   models = gpt4o
//   model.gpt4o.kind = http        # or scripted
//   model.gpt4o.model_id = gpt-4o
//   model.gpt4o.temperature = 0.7
//   perturbation_model = gpt4o
struct CliConfig {
  std::filesystem::path workspace;
  std::filesystem::path corpus;
  std::optional<std::filesystem::path> groups;
  std::filesystem::path ledger = "ledger.jsonl";
  std::filesystem::path reports = "reports";
  std::optional<std::filesystem::path> workdir;
  std::vector<std::string> perturbations = {"identity"};
  int runs = 20;
  int k = 5;
  int max_iterations = 5;
  int parallelism = 1;
  std::chrono::seconds wall_clock_cap{30 * 60};
  std::size_t feedback_cap = 16 * 1024;
  bool record_timing = true;
  bool keep_failed_workdirs = true;
  std::chrono::seconds self_check_budget{30};
  CheckerKind checker = CheckerKind::kToolchain;
  std::optional<std::filesystem::path> simulated_rules;
  checkers::FuzzConfig fuzz;
  checkers::ToolchainConfig toolchain;
  std::vector<llm::BackendConfig> models;
  std::optional<std::string> perturbation_model;
  std::string tokenizer = "approx";  // or "command: <argv>"

  // Hash over the settings that shape results (not paths, parallelism or
  // timing flags).
  std::string hash;

  const llm::BackendConfig* FindModel(const std::string& label) const;
};

// Expands "all", "deterministic", "offline" and comma lists into registry
// ids. Throws ConfigError on unknown ids.
std::vector<std::string> ExpandPerturbations(const std::string& spec);

// Reads the file (if any), applies `overrides` on top and validates.
// Relative paths resolve against `workspace`, which itself resolves
// against the config file's directory (or the current one).
// Throws ConfigError.
CliConfig LoadCliConfig(const std::optional<std::filesystem::path>& path,
                        const std::map<std::string, std::string>& overrides = {});

}  // namespace transcheck::cli

#endif  // TRANSCHECK_CLI_CONFIG_H_
