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

#ifndef TRANSCHECK_CHECKERS_TOOLCHAIN_CHECKER_H_
#define TRANSCHECK_CHECKERS_TOOLCHAIN_CHECKER_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transcheck/checkers/check_report.h"
#include "transcheck/checkers/checker.h"
#include "transcheck/checkers/config.h"
#include "transcheck/checkers/harness_generator.h"
#include "transcheck/corpus/source_unit.h"

namespace transcheck::checkers {

// The implementation compared against the C reference.
struct SideB {
  enum class Kind { kRust, kC };
  Kind kind = Kind::kRust;
  std::string rust_source;
  // kC: another C source (e.g. a perturbed copy) and how its functions map
  // onto the reference interfaces.
  std::string c_text;
  std::string c_file_name = "side_b.c";
  std::filesystem::path c_origin_dir;
  std::map<std::string, SideBinding> bindings;

  static SideB Rust(std::string source);
  static SideB C(std::string text, std::string file_name,
                 std::filesystem::path origin_dir,
                 std::map<std::string, SideBinding> bindings = {});
};

// Builds one libFuzzer binary per target function and runs or replays it.
class DifferentialHarness {
 public:
  DifferentialHarness(ToolchainConfig toolchain, FuzzConfig fuzz,
                      std::filesystem::path dir);

  // nullopt when every harness built; otherwise a FuzzingSetup (or
  // TranslationSystem, for missing tools) report.
  std::optional<CheckReport> Build(const corpus::SourceUnit& reference,
                                   const SideB& side_b);

  // Fuzzes each built target for `per_function` and stops at the first
  // counterexample or infrastructure error.
  CheckReport FuzzAll(std::chrono::seconds per_function);
  CheckReport FuzzOne(const std::string& function,
                      std::chrono::seconds budget);

  // Runs the harness once on `input`. Returns the counterexample it
  // reports, or nullopt when the input passes (or the C side errors).
  std::optional<Counterexample> Replay(const std::string& function,
                                       std::string_view input);

  const std::vector<std::string>& functions() const { return functions_; }
  const InputLayout& layout(const std::string& function) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct Target {
    corpus::FunctionInterface iface;
    InputLayout layout;
    std::filesystem::path binary;
  };

  const Target& Find(const std::string& function) const;

  ToolchainConfig toolchain_;
  FuzzConfig fuzz_;
  std::filesystem::path dir_;
  std::vector<std::string> functions_;
  std::map<std::string, Target> targets_;
};

class ToolchainChecker : public Checker {
 public:
  ToolchainChecker(ToolchainConfig toolchain, FuzzConfig fuzz);

  CheckReport Compile(std::string_view rust_source,
                      const std::filesystem::path& workdir) override;
  CheckReport Lint(std::string_view rust_source,
                   const std::filesystem::path& workdir) override;
  CheckReport Fuzz(const corpus::SourceUnit& unit, std::string_view rust_source,
                   const std::filesystem::path& workdir) override;

  std::string Name() const override { return "toolchain"; }
  // First line of each tool's --version output; "missing" when absent.
  // Cached after the first call.
  std::map<std::string, std::string> Versions() override;

  const ToolchainConfig& toolchain() const { return toolchain_; }
  const FuzzConfig& fuzz() const { return fuzz_; }

 private:
  // Set when a pinned version does not match.
  std::optional<std::string> PinError();

  ToolchainConfig toolchain_;
  FuzzConfig fuzz_;
  std::optional<std::map<std::string, std::string>> versions_;
};

// True when rustc, clippy-driver and clang are all runnable.
bool ToolchainAvailable(const ToolchainConfig& toolchain = {});

// Parses `--error-format=json` output into rendered messages. Summary lines
// ("aborting due to ...", "N warnings emitted") are dropped.
struct RustDiagnostic {
  std::string level;  // "error", "warning", ...
  std::string code;   // e.g. "E0425" or "clippy::ptr_arg"; may be empty
  std::string rendered;
};
std::vector<RustDiagnostic> ParseRustDiagnostics(std::string_view output);

}  // namespace transcheck::checkers

#endif  // TRANSCHECK_CHECKERS_TOOLCHAIN_CHECKER_H_
