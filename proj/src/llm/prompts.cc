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

#include "transcheck/llm/prompts.h"

#include <stdexcept>

#include "transcheck/support/text.h"

namespace transcheck::llm {

namespace {

constexpr std::string_view kTruncationMarker = "\n[... truncated]";

struct Fence {
  std::string tag;
  std::string body;
  std::size_t lines = 0;
};

std::vector<Fence> FindFences(std::string_view text) {
  std::vector<Fence> fences;
  std::vector<std::string> lines = SplitLines(text);
  std::size_t i = 0;
  while (i < lines.size()) {
    std::string_view line = Trim(lines[i]);
    if (!StartsWith(line, "```")) {
      ++i;
      continue;
    }
    Fence fence;
    fence.tag = ToLower(Trim(line.substr(3)));
    std::size_t j = i + 1;
    bool closed = false;
    for (; j < lines.size(); ++j) {
      if (Trim(lines[j]) == "```") {
        closed = true;
        break;
      }
      fence.body += lines[j];
      fence.body += '\n';
      ++fence.lines;
    }
    if (!closed) {
      // An unterminated fence still carries the code (truncated replies).
      if (fence.lines > 0) {
        fences.push_back(std::move(fence));
      }
      break;
    }
    fences.push_back(std::move(fence));
    i = j + 1;
  }
  return fences;
}

bool IsRustTag(const std::string& tag) {
  std::string_view first = tag;
  if (auto space = first.find_first_of(" ,{"); space != first.npos) {
    first = first.substr(0, space);
  }
  return first == "rust" || first == "rs";
}

}  // namespace

std::string BuildTranslationPrompt(std::string_view c_code) {
  if (Trim(c_code).empty()) {
    throw std::invalid_argument("translation prompt needs non-empty code");
  }
  std::string prompt(kTranslationPreamble);
  prompt += c_code;
  return prompt;
}

std::string BuildFeedbackPrompt(const std::vector<std::string>& diagnostics,
                                std::size_t byte_cap) {
  if (diagnostics.empty()) {
    throw std::invalid_argument("feedback prompt needs at least one diagnostic");
  }
  std::string body;
  for (const std::string& d : diagnostics) {
    if (!body.empty()) {
      body += "\n\n";
    }
    body += TrimRight(d);
  }
  if (body.size() > byte_cap) {
    std::size_t keep = byte_cap > kTruncationMarker.size()
                           ? byte_cap - kTruncationMarker.size()
                           : 0;
    // Do not split a UTF-8 sequence.
    while (keep > 0 && (static_cast<unsigned char>(body[keep]) & 0xC0) == 0x80) {
      --keep;
    }
    body.resize(keep);
    body += kTruncationMarker;
  }
  return std::string(kFeedbackPreamble) + body;
}

ExtractedCode ExtractCode(std::string_view response) {
  if (Trim(response).empty()) {
    throw std::invalid_argument("empty model response");
  }
  std::vector<Fence> fences = FindFences(response);
  const Fence* best_rust = nullptr;
  const Fence* best_any = nullptr;
  for (const Fence& f : fences) {
    if (IsRustTag(f.tag) && (best_rust == nullptr || f.lines > best_rust->lines)) {
      best_rust = &f;
    }
    if (best_any == nullptr || f.lines > best_any->lines) {
      best_any = &f;
    }
  }
  if (const Fence* pick = best_rust != nullptr ? best_rust : best_any) {
    return {std::string(Trim(pick->body)), CodeConfidence::kFenced};
  }
  return {std::string(Trim(response)), CodeConfidence::kUnfenced};
}

}  // namespace transcheck::llm
