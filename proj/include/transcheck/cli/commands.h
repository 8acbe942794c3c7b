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

#ifndef TRANSCHECK_CLI_COMMANDS_H_
#define TRANSCHECK_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace transcheck::cli {

// Options shared by all subcommands. `overrides` are `key=value` settings
// applied on top of the config file.
struct CommonOptions {
  std::optional<std::filesystem::path> config;
  std::vector<std::string> overrides;
};

struct StatsOptions {
  CommonOptions common;
  std::optional<std::string> group;
  std::optional<std::filesystem::path> out;
};

struct PerturbOptions {
  CommonOptions common;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool skip_self_check = false;
};

struct TranslateCommandOptions {
  CommonOptions common;
};

struct EvaluateOptions {
  CommonOptions common;
  std::vector<std::filesystem::path> ledgers;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> model;
  std::string perturbation = "identity";  // "all" disables the filter
  bool pass_table = false;
  bool robust = false;
  bool augmented = false;
  bool token_curve = false;
  bool failure_hist = false;
  bool errors = false;
  bool solved_sets = false;
  std::size_t samples = 0;
  std::size_t set_size = 20;
  std::uint64_t seed = 1;
};

// Each returns an exit code; diagnostics and progress go to `err`.
int Stats(const StatsOptions& options, std::ostream& err);
int Perturb(const PerturbOptions& options, std::ostream& err);
int Translate(const TranslateCommandOptions& options, std::ostream& err);
int Evaluate(const EvaluateOptions& options, std::ostream& err);

// Parses `args` (without the program name) and dispatches.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace transcheck::cli

#endif  // TRANSCHECK_CLI_COMMANDS_H_
