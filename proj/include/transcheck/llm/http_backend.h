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

#ifndef TRANSCHECK_LLM_HTTP_BACKEND_H_
#define TRANSCHECK_LLM_HTTP_BACKEND_H_

#include <chrono>
#include <functional>
#include <string>

#include <json.hpp>

#include "transcheck/llm/chat.h"
#include "transcheck/llm/rate_limiter.h"

namespace transcheck::llm {

// OpenAI-style chat completion client. The request body carries model,
// temperature and messages; the reply's usage object is mapped onto
// TokenUsage with reasoning tokens split out of the completion count.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(BackendConfig config);

  Completion Complete(const Conversation& conversation,
                      const RequestContext& context = {}) override;
  const BackendConfig& config() const override { return config_; }

  void set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
    sleeper_ = std::move(sleeper);
  }

 private:
  Completion CompleteOnce(const nlohmann::json& body);

  BackendConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  RateLimiter limiter_;
  std::function<void(std::chrono::milliseconds)> sleeper_;
};

nlohmann::json BuildChatRequest(const BackendConfig& config,
                                const Conversation& conversation);

// Maps a reply (status + body) to a completion or throws LlmError.
Completion ParseChatResponse(int status, const std::string& body);

}  // namespace transcheck::llm

#endif  // TRANSCHECK_LLM_HTTP_BACKEND_H_
