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

#ifndef TRANSCHECK_CHECKERS_CONFIG_H_
#define TRANSCHECK_CHECKERS_CONFIG_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "transcheck/checkers/type_mapping.h"

namespace transcheck::checkers {

struct FuzzConfig {
  std::chrono::seconds timeout{60};  // per fuzzed function
  std::size_t max_input_len = 4096;
  HarnessLimits limits;
  // 0 means floats must be bit-identical (any NaN equals any NaN).
  std::uint64_t float_ulp_tolerance = 0;
  // CPU-time watchdogs inside the harness. A C call over budget counts as a
  // C-side error, a Rust call over budget as a Rust-only runtime error.
  std::chrono::milliseconds c_call_budget{1000};
  std::chrono::milliseconds rust_call_budget{3000};
  std::uint64_t seed = 1;
  // Adds sanitizer coverage to the Rust side so the fuzzer also sees its
  // branches.
  bool instrument_rust = true;

  void Validate() const;  // throws std::invalid_argument
};

enum class LintLevel { kWarnings, kErrorsOnly };

struct ToolchainConfig {
  std::string rustc = "rustc";
  std::string clippy = "clippy-driver";
  std::string clang = "clang";
  std::string edition = "2021";
  bool overflow_checks = true;
  LintLevel lint_level = LintLevel::kWarnings;
  std::vector<std::string> rustc_flags;
  std::vector<std::string> clippy_flags;
  std::vector<std::string> clang_flags;
  // Expected `--version` prefixes. A mismatch is a setup error.
  std::optional<std::string> rustc_version;
  std::optional<std::string> clippy_version;
  std::optional<std::string> clang_version;
};

// Applies `checkers.*` keys from a key-value config. Unknown keys under that
// prefix throw std::invalid_argument.
void ApplyCheckerSettings(const std::map<std::string, std::string>& kv,
                          FuzzConfig* fuzz, ToolchainConfig* toolchain);

}  // namespace transcheck::checkers

#endif  // TRANSCHECK_CHECKERS_CONFIG_H_
