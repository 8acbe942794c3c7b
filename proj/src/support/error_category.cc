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

#include "transcheck/support/error_category.h"

namespace transcheck {

std::string_view ToString(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kFuzzingSetup:
      return "FuzzingSetup";
    case ErrorCategory::kFuzzingException:
      return "FuzzingException";
    case ErrorCategory::kTranslationSystem:
      return "TranslationSystem";
    case ErrorCategory::kLlmApi:
      return "LlmApi";
  }
  return "TranslationSystem";
}

std::optional<ErrorCategory> ParseErrorCategory(std::string_view text) {
  for (ErrorCategory category : kAllErrorCategories) {
    if (ToString(category) == text) {
      return category;
    }
  }
  return std::nullopt;
}

}  // namespace transcheck
