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

#ifndef TRANSCHECK_PERTURB_SELF_CHECK_H_
#define TRANSCHECK_PERTURB_SELF_CHECK_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "transcheck/checkers/check_report.h"
#include "transcheck/checkers/config.h"
#include "transcheck/corpus/source_unit.h"
#include "transcheck/perturb/perturbation.h"

namespace transcheck::perturb {

enum class Verdict { kEquivalent, kCounterexample, kCompileFailure, kInfraError };

std::string_view ToString(Verdict verdict);
std::optional<Verdict> ParseVerdict(std::string_view text);

struct SelfCheckResult {
  Verdict verdict = Verdict::kEquivalent;
  // False when equivalence follows without fuzzing (same text, or the same
  // token stream apart from layout and comments).
  bool fuzzed = false;
  std::string note;
  std::vector<std::string> diagnostics;
  std::optional<checkers::Counterexample> counterexample;
  std::optional<ErrorCategory> infra_error;
  std::uint64_t executions = 0;
};

nlohmann::json ToJson(const SelfCheckResult& result);

// Compiles both files with clang and differential-fuzzes every fuzz target
// of `original` against the perturbed copy. `budget` is shared by all
// targets of the file.
SelfCheckResult SelfCheck(const corpus::SourceUnit& original,
                          const PerturbedUnit& perturbed,
                          std::chrono::seconds budget,
                          const std::filesystem::path& workdir,
                          const checkers::ToolchainConfig& toolchain = {},
                          checkers::FuzzConfig fuzz = {});

}  // namespace transcheck::perturb

#endif  // TRANSCHECK_PERTURB_SELF_CHECK_H_
