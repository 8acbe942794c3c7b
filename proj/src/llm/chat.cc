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

#include "transcheck/llm/chat.h"

#include "transcheck/llm/http_backend.h"
#include "transcheck/llm/scripted_backend.h"

namespace transcheck::llm {

std::string_view ToString(Role role) {
  switch (role) {
    case Role::kSystem:
      return "system";
    case Role::kUser:
      return "user";
    case Role::kAssistant:
      return "assistant";
  }
  return "user";
}

std::optional<Role> ParseRole(std::string_view text) {
  if (text == "system") return Role::kSystem;
  if (text == "user") return Role::kUser;
  if (text == "assistant") return Role::kAssistant;
  return std::nullopt;
}

void Conversation::AddSystem(std::string content) {
  messages_.push_back({Role::kSystem, std::move(content)});
}

void Conversation::AddUser(std::string content) {
  messages_.push_back({Role::kUser, std::move(content)});
}

void Conversation::AddAssistant(std::string content) {
  messages_.push_back({Role::kAssistant, std::move(content)});
}

std::size_t Conversation::AssistantTurns() const {
  std::size_t n = 0;
  for (const ChatMessage& m : messages_) {
    n += m.role == Role::kAssistant ? 1 : 0;
  }
  return n;
}

std::string_view Conversation::FirstUserMessage() const {
  for (const ChatMessage& m : messages_) {
    if (m.role == Role::kUser) {
      return m.content;
    }
  }
  return {};
}

std::string_view Conversation::LastUserMessage() const {
  for (auto it = messages_.rbegin(); it != messages_.rend(); ++it) {
    if (it->role == Role::kUser) {
      return it->content;
    }
  }
  return {};
}

void Conversation::Validate() const {
  std::size_t i = 0;
  while (i < messages_.size() && messages_[i].role == Role::kSystem) {
    ++i;
  }
  if (i == messages_.size()) {
    throw std::invalid_argument("conversation has no user turn");
  }
  Role expected = Role::kUser;
  for (; i < messages_.size(); ++i) {
    const ChatMessage& m = messages_[i];
    if (m.role != expected) {
      throw std::invalid_argument(
          "conversation turn " + std::to_string(i) + " should be " +
          std::string(ToString(expected)) + ", got " +
          std::string(ToString(m.role)));
    }
    if (m.content.empty()) {
      throw std::invalid_argument("empty " + std::string(ToString(m.role)) +
                                  " turn at " + std::to_string(i));
    }
    expected = expected == Role::kUser ? Role::kAssistant : Role::kUser;
  }
  if (messages_.back().role != Role::kUser) {
    throw std::invalid_argument("conversation must end with a user turn");
  }
}

nlohmann::json Conversation::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const ChatMessage& m : messages_) {
    out.push_back({{"role", ToString(m.role)}, {"content", m.content}});
  }
  return out;
}

TokenUsage& TokenUsage::operator+=(const TokenUsage& other) {
  prompt += other.prompt;
  completion += other.completion;
  if (other.reasoning) {
    reasoning = reasoning.value_or(0) + *other.reasoning;
  }
  return *this;
}

nlohmann::json ToJson(const TokenUsage& usage) {
  nlohmann::json j = {{"prompt", usage.prompt},
                      {"completion", usage.completion}};
  j["reasoning"] = usage.reasoning ? nlohmann::json(*usage.reasoning)
                                   : nlohmann::json(nullptr);
  return j;
}

TokenUsage TokenUsageFromJson(const nlohmann::json& j) {
  TokenUsage usage;
  usage.prompt = j.value("prompt", std::int64_t{0});
  usage.completion = j.value("completion", std::int64_t{0});
  if (j.contains("reasoning") && !j["reasoning"].is_null()) {
    usage.reasoning = j["reasoning"].get<std::int64_t>();
  }
  if (usage.prompt < 0 || usage.completion < 0 ||
      usage.reasoning.value_or(0) < 0) {
    throw std::invalid_argument("token counts must be non-negative");
  }
  return usage;
}

void BackendConfig::Validate() const {
  if (temperature < 0) {
    throw std::invalid_argument("temperature must be >= 0");
  }
  if (kind == BackendKind::kScripted && script_path.empty()) {
    throw std::invalid_argument("scripted backend '" + label() +
                                "' needs a script path");
  }
  if (kind == BackendKind::kHttpChat && (model_id.empty() || endpoint.empty())) {
    throw std::invalid_argument("http backend '" + label() +
                                "' needs a model id and an endpoint");
  }
  if (retry.max_retries < 0 || requests_per_minute < 0) {
    throw std::invalid_argument("negative retry or rate setting");
  }
}

std::string_view ToString(LlmErrorKind kind) {
  switch (kind) {
    case LlmErrorKind::kTransport:
      return "transport";
    case LlmErrorKind::kContentFilter:
      return "content-filter";
    case LlmErrorKind::kQuota:
      return "quota";
    case LlmErrorKind::kProtocol:
      return "protocol";
    case LlmErrorKind::kScript:
      return "script";
  }
  return "transport";
}

std::unique_ptr<ChatBackend> MakeBackend(const BackendConfig& config) {
  config.Validate();
  if (config.kind == BackendKind::kHttpChat) {
    return std::make_unique<HttpChatBackend>(config);
  }
  return ScriptedBackend::Load(config);
}

}  // namespace transcheck::llm
