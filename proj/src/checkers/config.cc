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

#include "transcheck/checkers/config.h"

#include <charconv>
#include <stdexcept>

#include "transcheck/support/text.h"

namespace transcheck::checkers {

namespace {

std::uint64_t ParseUnsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(key + ": expected a non-negative integer, got '" +
                                text + "'");
  }
  return v;
}

bool ParseBool(const std::string& key, const std::string& text) {
  std::string t = ToLower(text);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw std::invalid_argument(key + ": expected a boolean, got '" + text + "'");
}

std::vector<std::string> Words(const std::string& text) {
  std::vector<std::string> out;
  for (const std::string& w : Split(text, ' ')) {
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

}  // namespace

void FuzzConfig::Validate() const {
  if (timeout.count() <= 0) {
    throw std::invalid_argument("fuzz timeout must be positive");
  }
  if (max_input_len == 0) {
    throw std::invalid_argument("max_input_len must be positive");
  }
  if (limits.pointer_extent == 0 || limits.string_capacity < 2) {
    throw std::invalid_argument(
        "pointer_extent must be >= 1 and string_capacity >= 2");
  }
  if (c_call_budget.count() <= 0 || rust_call_budget.count() <= 0) {
    throw std::invalid_argument("call budgets must be positive");
  }
}

void ApplyCheckerSettings(const std::map<std::string, std::string>& kv,
                          FuzzConfig* fuzz, ToolchainConfig* tc) {
  for (const auto& [key, value] : kv) {
    if (!StartsWith(key, "checkers.")) continue;
    std::string k = key.substr(9);
    if (k == "fuzz_timeout") {
      fuzz->timeout = std::chrono::seconds(ParseUnsigned(key, value));
    } else if (k == "max_input_len") {
      fuzz->max_input_len = ParseUnsigned(key, value);
    } else if (k == "pointer_extent") {
      fuzz->limits.pointer_extent = ParseUnsigned(key, value);
    } else if (k == "string_capacity") {
      fuzz->limits.string_capacity = ParseUnsigned(key, value);
    } else if (k == "float_ulp") {
      fuzz->float_ulp_tolerance = ParseUnsigned(key, value);
    } else if (k == "c_call_ms") {
      fuzz->c_call_budget = std::chrono::milliseconds(ParseUnsigned(key, value));
    } else if (k == "rust_call_ms") {
      fuzz->rust_call_budget =
          std::chrono::milliseconds(ParseUnsigned(key, value));
    } else if (k == "seed") {
      fuzz->seed = ParseUnsigned(key, value);
    } else if (k == "instrument_rust") {
      fuzz->instrument_rust = ParseBool(key, value);
    } else if (k == "rustc") {
      tc->rustc = value;
    } else if (k == "clippy") {
      tc->clippy = value;
    } else if (k == "clang") {
      tc->clang = value;
    } else if (k == "edition") {
      tc->edition = value;
    } else if (k == "overflow_checks") {
      tc->overflow_checks = ParseBool(key, value);
    } else if (k == "lint_level") {
      if (value == "warnings") {
        tc->lint_level = LintLevel::kWarnings;
      } else if (value == "errors-only" || value == "warnings-allowed") {
        tc->lint_level = LintLevel::kErrorsOnly;
      } else {
        throw std::invalid_argument(key + ": expected warnings or errors-only");
      }
    } else if (k == "rustc_flags") {
      tc->rustc_flags = Words(value);
    } else if (k == "clippy_flags") {
      tc->clippy_flags = Words(value);
    } else if (k == "clang_flags") {
      tc->clang_flags = Words(value);
    } else if (k == "rustc_version") {
      tc->rustc_version = value;
    } else if (k == "clippy_version") {
      tc->clippy_version = value;
    } else if (k == "clang_version") {
      tc->clang_version = value;
    } else {
      throw std::invalid_argument("unknown setting " + key);
    }
  }
  fuzz->Validate();
}

}  // namespace transcheck::checkers
