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

#include "transcheck/llm/http_backend.h"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "transcheck/support/text.h"

namespace transcheck::llm {

namespace {

bool MentionsContentFilter(const std::string& text) {
  std::string lower = ToLower(text);
  return lower.find("content_filter") != std::string::npos ||
         lower.find("content management policy") != std::string::npos ||
         lower.find("content_policy") != std::string::npos;
}

std::string ErrorField(const nlohmann::json& j, const char* key) {
  if (j.is_object() && j.contains("error") && j["error"].is_object()) {
    const auto& e = j["error"];
    if (e.contains(key) && e[key].is_string()) {
      return e[key].get<std::string>();
    }
  }
  return "";
}

}  // namespace

nlohmann::json BuildChatRequest(const BackendConfig& config,
                                const Conversation& conversation) {
  return {{"model", config.model_id},
          {"temperature", config.temperature},
          {"messages", conversation.ToJson()}};
}

Completion ParseChatResponse(int status, const std::string& body) {
  nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  std::string snippet = body.substr(0, 500);
  if (status != 200) {
    std::string code = ErrorField(j, "code");
    std::string type = ErrorField(j, "type");
    std::string message = ErrorField(j, "message");
    std::string what = "HTTP " + std::to_string(status) + ": " +
                       (message.empty() ? snippet : message);
    if (code == "content_filter" || MentionsContentFilter(message)) {
      throw LlmError(LlmErrorKind::kContentFilter, what);
    }
    if (code == "insufficient_quota" || type == "insufficient_quota") {
      throw LlmError(LlmErrorKind::kQuota, what);
    }
    if (status == 429 || status == 408 || status >= 500) {
      throw LlmError(LlmErrorKind::kTransport, what);
    }
    throw LlmError(LlmErrorKind::kProtocol, what);
  }
  if (j.is_discarded() || !j.is_object()) {
    throw LlmError(LlmErrorKind::kProtocol, "reply is not JSON: " + snippet);
  }
  if (!j.contains("choices") || !j["choices"].is_array() ||
      j["choices"].empty()) {
    throw LlmError(LlmErrorKind::kProtocol, "reply has no choices: " + snippet);
  }
  const auto& choice = j["choices"][0];
  if (choice.value("finish_reason", "") == "content_filter") {
    throw LlmError(LlmErrorKind::kContentFilter,
                   "completion stopped by the content filter");
  }
  if (!choice.contains("message") || !choice["message"].contains("content") ||
      !choice["message"]["content"].is_string()) {
    throw LlmError(LlmErrorKind::kProtocol, "reply has no message content");
  }
  Completion c;
  c.text = choice["message"]["content"].get<std::string>();
  if (j.contains("usage") && j["usage"].is_object()) {
    const auto& u = j["usage"];
    c.usage.prompt = u.value("prompt_tokens", std::int64_t{0});
    std::int64_t completion = u.value("completion_tokens", std::int64_t{0});
    if (u.contains("completion_tokens_details") &&
        u["completion_tokens_details"].is_object() &&
        u["completion_tokens_details"].contains("reasoning_tokens") &&
        u["completion_tokens_details"]["reasoning_tokens"].is_number()) {
      std::int64_t reasoning =
          u["completion_tokens_details"]["reasoning_tokens"].get<std::int64_t>();
      c.usage.reasoning = reasoning;
      completion = std::max<std::int64_t>(0, completion - reasoning);
    }
    c.usage.completion = completion;
  }
  return c;
}

HttpChatBackend::HttpChatBackend(BackendConfig config)
    : config_(std::move(config)),
      limiter_(config_.requests_per_minute),
      sleeper_([](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
      }) {
  std::string_view url = config_.endpoint;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw std::invalid_argument("endpoint needs a scheme: " + config_.endpoint);
  }
  auto path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string_view::npos) {
    origin_ = std::string(url);
    path_ = "/";
  } else {
    origin_ = std::string(url.substr(0, path_begin));
    path_ = std::string(url.substr(path_begin));
  }
}

Completion HttpChatBackend::CompleteOnce(const nlohmann::json& body) {
  limiter_.Acquire();
  httplib::Client client(origin_);
  auto timeout = std::chrono::duration_cast<std::chrono::seconds>(
      config_.request_timeout);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (const char* key = std::getenv(config_.credential_env.c_str());
      key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw LlmError(LlmErrorKind::kTransport,
                   "request to " + origin_ + " failed: " +
                       httplib::to_string(res.error()));
  }
  return ParseChatResponse(res->status, res->body);
}

Completion HttpChatBackend::Complete(const Conversation& conversation,
                                     const RequestContext&) {
  conversation.Validate();
  nlohmann::json body = BuildChatRequest(config_, conversation);
  std::chrono::milliseconds backoff = config_.retry.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    try {
      return CompleteOnce(body);
    } catch (const LlmError& e) {
      if (!e.retryable() || attempt >= config_.retry.max_retries) {
        throw;
      }
    }
    sleeper_(backoff);
    backoff = std::min(
        config_.retry.max_backoff,
        std::chrono::milliseconds(static_cast<std::int64_t>(
            static_cast<double>(backoff.count()) * config_.retry.multiplier)));
  }
}

}  // namespace transcheck::llm
