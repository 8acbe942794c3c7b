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

#ifndef TRANSCHECK_CHECKERS_SIMULATED_CHECKER_H_
#define TRANSCHECK_CHECKERS_SIMULATED_CHECKER_H_

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "transcheck/checkers/checker.h"

namespace transcheck::checkers {

// A verdict table keyed by substrings of the Rust source:
//
//   {"rules": [
//     {"match": "COMPILE_ERROR", "stage": "Compiled", "result": "fail",
//      "diagnostics": ["error[E0425]: cannot find value `b`"]},
//     {"match": "x + 2", "stage": "Fuzzed", "result": "counterexample",
//      "counterexample": {...}},
//     {"match": "BROKEN_HARNESS", "stage": "Fuzzed",
//      "result": "infra:FuzzingSetup"}]}
//
// The first rule whose stage matches and whose `match` occurs in the source
// decides; without one the stage passes. An empty source fails Compiled,
// and a unit without fuzz targets is a FuzzingSetup error, as with the real
// toolchain.
struct SimulatedRule {
  std::string match;
  CheckStage stage = CheckStage::kCompiled;
  enum class Result { kPass, kFail, kCounterexample, kInfra } result =
      Result::kFail;
  std::vector<std::string> diagnostics;
  std::optional<Counterexample> counterexample;
  ErrorCategory infra = ErrorCategory::kFuzzingSetup;
};

std::vector<SimulatedRule> ParseSimulatedRules(const nlohmann::json& j);

class SimulatedChecker : public Checker {
 public:
  SimulatedChecker() = default;
  explicit SimulatedChecker(std::vector<SimulatedRule> rules);
  static SimulatedChecker Load(const std::filesystem::path& path);

  CheckReport Compile(std::string_view rust_source,
                      const std::filesystem::path& workdir) override;
  CheckReport Lint(std::string_view rust_source,
                   const std::filesystem::path& workdir) override;
  CheckReport Fuzz(const corpus::SourceUnit& unit, std::string_view rust_source,
                   const std::filesystem::path& workdir) override;

  std::string Name() const override { return "simulated"; }
  std::map<std::string, std::string> Versions() override {
    return {{"checker", "simulated"}};
  }

  const std::vector<SimulatedRule>& rules() const { return rules_; }

 private:
  CheckReport Decide(CheckStage stage, std::string_view source) const;

  std::vector<SimulatedRule> rules_;
};

}  // namespace transcheck::checkers

#endif  // TRANSCHECK_CHECKERS_SIMULATED_CHECKER_H_
