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

#ifndef TRANSCHECK_LLM_CHAT_H_
#define TRANSCHECK_LLM_CHAT_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace transcheck::llm {

enum class Role { kSystem, kUser, kAssistant };

std::string_view ToString(Role role);
std::optional<Role> ParseRole(std::string_view text);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

class Conversation {
 public:
  void AddSystem(std::string content);
  void AddUser(std::string content);
  void AddAssistant(std::string content);

  const std::vector<ChatMessage>& messages() const { return messages_; }
  std::size_t AssistantTurns() const;
  // Empty when there is no user turn yet.
  std::string_view FirstUserMessage() const;
  std::string_view LastUserMessage() const;

  // Throws std::invalid_argument unless: system turns come first, the first
  // non-system turn is a user turn, user/assistant alternate afterwards, the
  // last turn is a user turn, and user/assistant contents are non-empty.
  void Validate() const;

  nlohmann::json ToJson() const;

 private:
  std::vector<ChatMessage> messages_;
};

struct TokenUsage {
  std::int64_t prompt = 0;
  // Visible output tokens only; reasoning tokens are tracked separately.
  std::int64_t completion = 0;
  std::optional<std::int64_t> reasoning;

  std::int64_t generated() const { return completion + reasoning.value_or(0); }
  std::int64_t total() const { return prompt + generated(); }
  TokenUsage& operator+=(const TokenUsage& other);
  bool operator==(const TokenUsage&) const = default;
};

nlohmann::json ToJson(const TokenUsage& usage);
TokenUsage TokenUsageFromJson(const nlohmann::json& j);

enum class BackendKind { kHttpChat, kScripted };

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{30000};
};

struct BackendConfig {
  std::string name;  // label used in the ledger; defaults to model_id
  BackendKind kind = BackendKind::kScripted;
  std::string model_id;
  double temperature = 0.7;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::chrono::milliseconds request_timeout{std::chrono::minutes(5)};
  RetryPolicy retry;
  // Name of the environment variable holding the API key.
  std::string credential_env = "OPENAI_API_KEY";
  std::string script_path;
  double requests_per_minute = 0;  // 0 disables rate limiting

  std::string label() const { return name.empty() ? model_id : name; }
  // Throws std::invalid_argument on inconsistent settings.
  void Validate() const;
};

enum class LlmErrorKind {
  kTransport,      // retryable
  kContentFilter,  // request rejected by the provider's policy filter
  kQuota,          // quota exhausted
  kProtocol,       // malformed or unexpected reply
  kScript,         // scripted backend has no answer
};

std::string_view ToString(LlmErrorKind kind);

class LlmError : public std::runtime_error {
 public:
  LlmError(LlmErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  LlmErrorKind kind() const { return kind_; }
  bool retryable() const { return kind_ == LlmErrorKind::kTransport; }

 private:
  LlmErrorKind kind_;
};

struct Completion {
  std::string text;
  TokenUsage usage;
};

// Identifies the run a request belongs to. Scripted backends in keyed mode
// use it to select responses without shared state.
struct RequestContext {
  std::string source_id;
  std::string perturbation_id;
  int run_index = 0;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // Does not modify the conversation. Thread-safe unless documented
  // otherwise by the implementation.
  virtual Completion Complete(const Conversation& conversation,
                              const RequestContext& context = {}) = 0;
  virtual const BackendConfig& config() const = 0;
};

std::unique_ptr<ChatBackend> MakeBackend(const BackendConfig& config);

}  // namespace transcheck::llm

#endif  // TRANSCHECK_LLM_CHAT_H_
