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

#ifndef TRANSCHECK_CHECKERS_CHECKER_H_
#define TRANSCHECK_CHECKERS_CHECKER_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "transcheck/checkers/check_report.h"
#include "transcheck/corpus/source_unit.h"

namespace transcheck::checkers {

// The check cascade. Callers run Compile, then Lint, then Fuzz, stopping at
// the first failure. Each call uses its own subdirectory of `workdir`.
class Checker {
 public:
  virtual ~Checker() = default;

  virtual CheckReport Compile(std::string_view rust_source,
                              const std::filesystem::path& workdir) = 0;
  virtual CheckReport Lint(std::string_view rust_source,
                           const std::filesystem::path& workdir) = 0;
  // Differentially fuzzes every fuzz target of `unit` against the Rust
  // source; all must pass. Stops at the first counterexample.
  virtual CheckReport Fuzz(const corpus::SourceUnit& unit,
                           std::string_view rust_source,
                           const std::filesystem::path& workdir) = 0;

  virtual std::string Name() const = 0;
  // Tool versions for the experiment ledger.
  virtual std::map<std::string, std::string> Versions() { return {}; }
};

}  // namespace transcheck::checkers

#endif  // TRANSCHECK_CHECKERS_CHECKER_H_
