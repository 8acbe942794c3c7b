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

#include "transcheck/llm/scripted_backend.h"

#include <algorithm>

#include "transcheck/support/text.h"

namespace transcheck::llm {

namespace {

std::optional<LlmErrorKind> ParseErrorKind(const std::string& text) {
  if (text == "content_filter") return LlmErrorKind::kContentFilter;
  if (text == "quota") return LlmErrorKind::kQuota;
  if (text == "transport") return LlmErrorKind::kTransport;
  if (text == "protocol") return LlmErrorKind::kProtocol;
  return std::nullopt;
}

ScriptEntry ParseEntry(const nlohmann::json& j, std::size_t index) {
  if (!j.is_object()) {
    throw std::invalid_argument("script entry " + std::to_string(index) +
                                " is not an object");
  }
  ScriptEntry e;
  if (j.contains("match")) e.match = j["match"].get<std::string>();
  e.turn = j.value("turn", 0);
  if (j.contains("runs")) e.runs = j["runs"].get<std::vector<int>>();
  if (j.contains("usage")) e.usage = TokenUsageFromJson(j["usage"]);
  if (j.contains("error")) {
    e.error = ParseErrorKind(j["error"].get<std::string>());
    if (!e.error) {
      throw std::invalid_argument("script entry " + std::to_string(index) +
                                  ": unknown error kind");
    }
  } else if (j.contains("response")) {
    e.response = j["response"].get<std::string>();
  } else {
    throw std::invalid_argument("script entry " + std::to_string(index) +
                                " needs a response or an error");
  }
  if (e.turn < 0) {
    throw std::invalid_argument("script entry " + std::to_string(index) +
                                ": negative turn");
  }
  return e;
}

std::int64_t Quarter(std::size_t bytes) {
  return static_cast<std::int64_t>((bytes + 3) / 4);
}

}  // namespace

Script ParseScript(const nlohmann::json& j) {
  Script script;
  const nlohmann::json* entries = &j;
  if (j.is_object()) {
    std::string mode = j.value("mode", "sequential");
    if (mode != "sequential" && mode != "keyed") {
      throw std::invalid_argument("unknown script mode '" + mode + "'");
    }
    script.keyed = mode == "keyed";
    if (!j.contains("entries")) {
      throw std::invalid_argument("script object needs 'entries'");
    }
    entries = &j["entries"];
  }
  if (!entries->is_array()) {
    throw std::invalid_argument("script entries must be a list");
  }
  for (std::size_t i = 0; i < entries->size(); ++i) {
    script.entries.push_back(ParseEntry((*entries)[i], i));
  }
  return script;
}

TokenUsage EstimateUsage(const Conversation& conversation,
                         const std::string& response) {
  std::size_t prompt_bytes = 0;
  for (const ChatMessage& m : conversation.messages()) {
    prompt_bytes += m.content.size();
  }
  TokenUsage usage;
  usage.prompt = Quarter(prompt_bytes);
  usage.completion = Quarter(response.size());
  return usage;
}

ScriptedBackend::ScriptedBackend(BackendConfig config, Script script)
    : config_(std::move(config)), script_(std::move(script)) {}

std::unique_ptr<ScriptedBackend> ScriptedBackend::Load(
    const BackendConfig& config) {
  auto text = ReadFile(config.script_path);
  if (!text) {
    throw std::invalid_argument("cannot read script " + config.script_path);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(*text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("script " + config.script_path +
                                " is not valid JSON: " + e.what());
  }
  return std::make_unique<ScriptedBackend>(config, ParseScript(j));
}

std::size_t ScriptedBackend::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

const ScriptEntry& ScriptedBackend::Select(const Conversation& conversation,
                                           const RequestContext& context) {
  if (!script_.keyed) {
    std::lock_guard<std::mutex> lock(mu_);
    if (next_ >= script_.entries.size()) {
      throw LlmError(LlmErrorKind::kScript,
                     "script exhausted after " + std::to_string(next_) +
                         " calls");
    }
    const ScriptEntry& e = script_.entries[next_++];
    if (e.match && conversation.LastUserMessage().find(*e.match) ==
                       std::string_view::npos) {
      throw LlmError(LlmErrorKind::kScript,
                     "script entry " + std::to_string(next_ - 1) +
                         " expected a prompt containing '" + *e.match + "'");
    }
    return e;
  }
  std::string_view first = conversation.FirstUserMessage();
  int turn = static_cast<int>(conversation.AssistantTurns());
  const ScriptEntry* best = nullptr;
  for (const ScriptEntry& e : script_.entries) {
    if (e.match && first.find(*e.match) == std::string_view::npos) continue;
    if (e.runs && std::find(e.runs->begin(), e.runs->end(),
                            context.run_index) == e.runs->end()) {
      continue;
    }
    if (e.turn > turn) continue;
    if (best == nullptr || e.turn > best->turn ||
        (e.turn == best->turn && e.runs && !best->runs)) {
      best = &e;
    }
  }
  if (best == nullptr) {
    throw LlmError(LlmErrorKind::kScript,
                   "no keyed script entry for run " +
                       std::to_string(context.run_index) + " turn " +
                       std::to_string(turn));
  }
  return *best;
}

Completion ScriptedBackend::Complete(const Conversation& conversation,
                                     const RequestContext& context) {
  conversation.Validate();
  const ScriptEntry& e = Select(conversation, context);
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
  }
  if (e.error) {
    std::string what = *e.error == LlmErrorKind::kContentFilter
                           ? "BadRequestError: the response was filtered due "
                             "to the prompt triggering the content management "
                             "policy"
                           : "scripted " + std::string(ToString(*e.error)) +
                                 " failure";
    throw LlmError(*e.error, what);
  }
  Completion c;
  c.text = e.response;
  c.usage = e.usage ? *e.usage : EstimateUsage(conversation, e.response);
  return c;
}

}  // namespace transcheck::llm
