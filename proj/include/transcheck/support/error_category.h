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

#ifndef TRANSCHECK_SUPPORT_ERROR_CATEGORY_H_
#define TRANSCHECK_SUPPORT_ERROR_CATEGORY_H_

#include <array>
#include <optional>
#include <string_view>

namespace transcheck {

// Infrastructure failure classes. A run that ends with one of these failed
// for reasons other than the model's translation quality.
enum class ErrorCategory {
  kFuzzingSetup,
  kFuzzingException,
  kTranslationSystem,
  kLlmApi,
};

inline constexpr std::array<ErrorCategory, 4> kAllErrorCategories = {
    ErrorCategory::kFuzzingSetup, ErrorCategory::kFuzzingException,
    ErrorCategory::kTranslationSystem, ErrorCategory::kLlmApi};

std::string_view ToString(ErrorCategory category);
std::optional<ErrorCategory> ParseErrorCategory(std::string_view text);

}  // namespace transcheck

#endif  // TRANSCHECK_SUPPORT_ERROR_CATEGORY_H_
