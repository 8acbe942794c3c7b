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

#ifndef TRANSCHECK_CHECKERS_CHECK_REPORT_H_
#define TRANSCHECK_CHECKERS_CHECK_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "transcheck/support/error_category.h"

namespace transcheck::checkers {

enum class CheckStage { kCompiled = 0, kLinted = 1, kFuzzed = 2 };

inline constexpr CheckStage kAllStages[] = {
    CheckStage::kCompiled, CheckStage::kLinted, CheckStage::kFuzzed};

std::string_view ToString(CheckStage stage);
std::optional<CheckStage> ParseCheckStage(std::string_view text);

enum class FailureKind { kValueMismatch, kRustOnlyRuntimeError };

std::string_view ToString(FailureKind kind);
std::optional<FailureKind> ParseFailureKind(std::string_view text);

struct NamedValue {
  std::string name;
  std::string value;

  bool operator==(const NamedValue&) const = default;
};

struct Counterexample {
  std::string function;
  FailureKind kind = FailureKind::kValueMismatch;
  std::string raw_input;  // bytes fed to the harness
  std::vector<NamedValue> inputs;
  std::vector<NamedValue> c_output;
  // Absent for rust-only runtime errors.
  std::optional<std::vector<NamedValue>> rust_output;
  // Signal, panic message or timeout description for runtime errors.
  std::string detail;
  std::string artifact;  // file holding raw_input, named by content hash

  bool operator==(const Counterexample&) const = default;
};

// Text used in feedback prompts:
//
//   Counterexample in function `f` (value-mismatch):
//   input values: a = 1, b = 2
//   C output: return = 3
//   Rust output: return = 4
//
// For runtime errors the last line reads
// "Rust output: runtime error (<detail>)".
std::string RenderCounterexample(const Counterexample& cx);
// Inverse of RenderCounterexample for the rendered fields (function, kind,
// inputs, outputs, detail). Returns nullopt on text it did not produce.
std::optional<Counterexample> ParseCounterexampleRendering(
    std::string_view text);

struct CheckReport {
  CheckStage stage = CheckStage::kCompiled;
  bool success = false;
  std::vector<std::string> diagnostics;
  std::optional<Counterexample> counterexample;
  std::optional<ErrorCategory> infra_error;
  // Fuzzing statistics; zero for other stages.
  std::uint64_t executions = 0;
  double seconds = 0;

  // Throws std::logic_error when the report breaks its invariants.
  void Validate() const;
  // Diagnostics to feed back to the model: the counterexample rendering
  // when there is one, else the raw diagnostics.
  std::vector<std::string> FeedbackItems() const;
};

CheckReport MakeSuccess(CheckStage stage);
CheckReport MakeFailure(CheckStage stage, std::vector<std::string> diagnostics);
CheckReport MakeInfraError(CheckStage stage, ErrorCategory category,
                           std::vector<std::string> diagnostics);

nlohmann::json ToJson(const Counterexample& cx);
Counterexample CounterexampleFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const CheckReport& report);
CheckReport CheckReportFromJson(const nlohmann::json& j);

}  // namespace transcheck::checkers

#endif  // TRANSCHECK_CHECKERS_CHECK_REPORT_H_
