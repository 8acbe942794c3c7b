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

#ifndef TRANSCHECK_LLM_SCRIPTED_BACKEND_H_
#define TRANSCHECK_LLM_SCRIPTED_BACKEND_H_

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "transcheck/llm/chat.h"

namespace transcheck::llm {

// Script file format (JSON):
//
//   [ {"response": "...", "usage": {...}}, ... ]
//       sequential mode: call i answers with entry i. Shared call counter,
//       so only deterministic when used from a single thread.
//
//   {"mode": "keyed", "entries": [ {"match": "...", "turn": 1,
//                                   "runs": [0, 2], "response": "...",
//                                   "usage": {...}}, ... ]}
//       keyed mode: stateless. An entry applies when `match` is a substring
//       of the first user message and `runs` (if given) lists the request's
//       run index. Among those, the entry with the largest `turn` (default
//       0) not exceeding the number of assistant turns so far wins. On a
//       tie an entry with a `runs` filter beats one without, then the
//       earlier entry wins. Safe under concurrent calls.
//
// Instead of "response" an entry may carry "error": one of "content_filter",
// "quota", "transport", "protocol". In sequential mode a "match" is checked
// against the latest user message.
// "usage" is {"prompt": n, "completion": n, "reasoning": n}. Without it the
// usage is estimated as ceil(bytes / 4) of the prompt and the response.
struct ScriptEntry {
  std::optional<std::string> match;
  int turn = 0;
  std::optional<std::vector<int>> runs;
  std::string response;
  std::optional<LlmErrorKind> error;
  std::optional<TokenUsage> usage;
};

struct Script {
  bool keyed = false;
  std::vector<ScriptEntry> entries;
};

Script ParseScript(const nlohmann::json& j);

class ScriptedBackend : public ChatBackend {
 public:
  ScriptedBackend(BackendConfig config, Script script);
  static std::unique_ptr<ScriptedBackend> Load(const BackendConfig& config);

  Completion Complete(const Conversation& conversation,
                      const RequestContext& context = {}) override;
  const BackendConfig& config() const override { return config_; }
  std::size_t calls() const;

 private:
  const ScriptEntry& Select(const Conversation& conversation,
                            const RequestContext& context);

  BackendConfig config_;
  Script script_;
  mutable std::mutex mu_;
  std::size_t next_ = 0;
  std::size_t calls_ = 0;
};

TokenUsage EstimateUsage(const Conversation& conversation,
                         const std::string& response);

}  // namespace transcheck::llm

#endif  // TRANSCHECK_LLM_SCRIPTED_BACKEND_H_
