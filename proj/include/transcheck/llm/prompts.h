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

#ifndef TRANSCHECK_LLM_PROMPTS_H_
#define TRANSCHECK_LLM_PROMPTS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace transcheck::llm {

inline constexpr std::string_view kTranslationPreamble =
    "Translate the following C code to Rust. Keep all identifiers exactly as "
    "they are. ";
inline constexpr std::string_view kFeedbackPreamble =
    "You made the following mistakes: ";
inline constexpr std::size_t kDefaultFeedbackCap = 16 * 1024;

// Throws std::invalid_argument on empty code.
std::string BuildTranslationPrompt(std::string_view c_code);

// Diagnostics are joined verbatim, one per paragraph, and the rendering is
// cut at `byte_cap` bytes so the first errors survive. Throws
// std::invalid_argument when `diagnostics` is empty.
std::string BuildFeedbackPrompt(const std::vector<std::string>& diagnostics,
                                std::size_t byte_cap = kDefaultFeedbackCap);

enum class CodeConfidence { kFenced, kUnfenced };

struct ExtractedCode {
  std::string source;
  CodeConfidence confidence = CodeConfidence::kUnfenced;
};

// Longest ```rust (or ```rs) block, else the longest fenced block of any
// tag, else the trimmed response. The selected text is trimmed, so the
// function is idempotent on its own output. Throws std::invalid_argument
// when the response is blank.
ExtractedCode ExtractCode(std::string_view response);

}  // namespace transcheck::llm

#endif  // TRANSCHECK_LLM_PROMPTS_H_
