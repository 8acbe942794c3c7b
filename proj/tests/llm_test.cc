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

#include <atomic>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "transcheck/llm/chat.h"
#include "transcheck/llm/http_backend.h"
#include "transcheck/llm/prompts.h"
#include "transcheck/llm/rate_limiter.h"
#include "transcheck/llm/scripted_backend.h"

namespace transcheck::llm {
namespace {

Conversation Ask(const std::string& text) {
  Conversation c;
  c.AddUser(text);
  return c;
}

TEST(PromptTest, TranslationPromptIsExact) {
  EXPECT_EQ(BuildTranslationPrompt("int f;"),
            "Translate the following C code to Rust. Keep all identifiers "
            "exactly as they are. int f;");
  EXPECT_EQ(BuildTranslationPrompt("x"), BuildTranslationPrompt("x"));
  EXPECT_THROW(BuildTranslationPrompt(""), std::invalid_argument);
}

TEST(PromptTest, FeedbackPrompt) {
  EXPECT_EQ(BuildFeedbackPrompt({"error[E0425]: cannot find value `b`"}),
            "You made the following mistakes: error[E0425]: cannot find "
            "value `b`");
  EXPECT_EQ(BuildFeedbackPrompt({"a\n", "b"}),
            "You made the following mistakes: a\n\nb");
  EXPECT_THROW(BuildFeedbackPrompt({}), std::invalid_argument);
}

TEST(PromptTest, FeedbackKeepsFirstErrorsUnderCap) {
  std::string first(100, 'x');
  std::string second(1000, 'y');
  std::string p = BuildFeedbackPrompt({first, second}, 300);
  std::string body = p.substr(kFeedbackPreamble.size());
  EXPECT_LE(body.size(), 300u);
  EXPECT_EQ(body.substr(0, 100), first);
  EXPECT_NE(body.find("truncated"), std::string::npos);
}

TEST(ExtractTest, SingleRustFence) {
  auto e = ExtractCode("Here:\n```rust\nfn f() {}\n```\nDone.");
  EXPECT_EQ(e.source, "fn f() {}");
  EXPECT_EQ(e.confidence, CodeConfidence::kFenced);
}

TEST(ExtractTest, PrefersRustOverLongerOtherFence) {
  std::string rust = "```rust\n";
  for (int i = 0; i < 10; ++i) rust += "let x" + std::to_string(i) + " = 0;\n";
  rust += "```\n";
  std::string text = "```text\nline1\nline2\n```\n" + rust;
  auto e = ExtractCode(text);
  EXPECT_NE(e.source.find("let x9"), std::string::npos);
  EXPECT_EQ(e.source.find("line1"), std::string::npos);
  auto other = ExtractCode("```\na\nb\nc\n```\n```c\nd\n```");
  EXPECT_EQ(other.source, "a\nb\nc");
}

TEST(ExtractTest, ProseFallbackAndIdempotence) {
  auto e = ExtractCode("  fn main() {}  \n");
  EXPECT_EQ(e.source, "fn main() {}");
  EXPECT_EQ(e.confidence, CodeConfidence::kUnfenced);
  EXPECT_THROW(ExtractCode(" \n"), std::invalid_argument);
  auto once = ExtractCode("```rust\n  fn a() {}\n\n```");
  EXPECT_EQ(ExtractCode(once.source).source, once.source);
}

TEST(ConversationTest, Validation) {
  Conversation ok;
  ok.AddSystem("s");
  ok.AddUser("u");
  ok.AddAssistant("a");
  ok.AddUser("u2");
  EXPECT_NO_THROW(ok.Validate());
  EXPECT_EQ(ok.AssistantTurns(), 1u);
  EXPECT_EQ(ok.FirstUserMessage(), "u");
  EXPECT_EQ(ok.LastUserMessage(), "u2");

  Conversation starts_with_assistant;
  starts_with_assistant.AddAssistant("a");
  EXPECT_THROW(starts_with_assistant.Validate(), std::invalid_argument);
  Conversation double_user;
  double_user.AddUser("a");
  double_user.AddUser("b");
  EXPECT_THROW(double_user.Validate(), std::invalid_argument);
  EXPECT_THROW(Ask("").Validate(), std::invalid_argument);
}

TEST(TokenUsageTest, Additive) {
  TokenUsage a{10, 5, std::nullopt};
  TokenUsage b{1, 2, 7};
  a += b;
  EXPECT_EQ(a.prompt, 11);
  EXPECT_EQ(a.completion, 7);
  EXPECT_EQ(a.reasoning, 7);
  EXPECT_EQ(a.generated(), 14);
  EXPECT_EQ(TokenUsageFromJson(ToJson(a)), a);
}

TEST(ScriptedTest, SequentialAnswersInOrder) {
  Script s = ParseScript(nlohmann::json::parse(
      R"([{"response":"A","usage":{"prompt":3,"completion":4}},
          {"response":"B","usage":{"prompt":5,"completion":6,"reasoning":2}}])"));
  ScriptedBackend backend({}, s);
  Completion a = backend.Complete(Ask("q"));
  Completion b = backend.Complete(Ask("q"));
  EXPECT_EQ(a.text, "A");
  EXPECT_EQ(b.text, "B");
  EXPECT_EQ(a.usage, (TokenUsage{3, 4, std::nullopt}));
  EXPECT_EQ(b.usage, (TokenUsage{5, 6, 2}));
  try {
    backend.Complete(Ask("q"));
    FAIL() << "expected exhaustion";
  } catch (const LlmError& e) {
    EXPECT_EQ(e.kind(), LlmErrorKind::kScript);
  }
}

TEST(ScriptedTest, ContentFilterIsNotRetryable) {
  ScriptedBackend backend(
      {}, ParseScript(nlohmann::json::parse(R"([{"error":"content_filter"}])")));
  try {
    backend.Complete(Ask("q"));
    FAIL() << "expected LlmError";
  } catch (const LlmError& e) {
    EXPECT_EQ(e.kind(), LlmErrorKind::kContentFilter);
    EXPECT_FALSE(e.retryable());
  }
}

TEST(ScriptedTest, KeyedSelectsByMatchTurnAndRun) {
  ScriptedBackend backend({}, ParseScript(nlohmann::json::parse(R"({
    "mode": "keyed",
    "entries": [
      {"match": "alpha", "response": "a0"},
      {"match": "alpha", "turn": 1, "response": "a1"},
      {"match": "alpha", "turn": 1, "runs": [3], "response": "a1-run3"},
      {"match": "beta", "response": "b0"}
    ]})")));
  EXPECT_EQ(backend.Complete(Ask("alpha code")).text, "a0");
  EXPECT_EQ(backend.Complete(Ask("beta code")).text, "b0");
  Conversation c = Ask("alpha code");
  c.AddAssistant("a0");
  c.AddUser("fix");
  EXPECT_EQ(backend.Complete(c).text, "a1");
  EXPECT_EQ(backend.Complete(c, {"", "", 3}).text, "a1-run3");
  c.AddAssistant("a1");
  c.AddUser("fix again");
  // Turn 2 is clamped to the highest scripted turn.
  EXPECT_EQ(backend.Complete(c).text, "a1");
  EXPECT_THROW(backend.Complete(Ask("gamma")), LlmError);
}

TEST(ScriptedTest, EstimatedUsageWithoutTable) {
  ScriptedBackend backend(
      {}, ParseScript(nlohmann::json::parse(R"([{"response":"12345"}])")));
  Completion c = backend.Complete(Ask("abcdefgh"));
  EXPECT_EQ(c.usage.prompt, 2);
  EXPECT_EQ(c.usage.completion, 2);
}

TEST(RateLimiterTest, SpacesRequests) {
  RateLimiter limiter(60.0);  // one per second
  auto t0 = RateLimiter::Clock::time_point{};
  EXPECT_EQ(limiter.Reserve(t0), RateLimiter::Clock::duration::zero());
  auto wait = limiter.Reserve(t0);
  EXPECT_NEAR(std::chrono::duration<double>(wait).count(), 1.0, 1e-6);
  auto wait2 = limiter.Reserve(t0 + std::chrono::milliseconds(500));
  EXPECT_NEAR(std::chrono::duration<double>(wait2).count(), 1.5, 1e-6);
  RateLimiter off(0);
  EXPECT_EQ(off.Reserve(t0), RateLimiter::Clock::duration::zero());
}

class HttpBackendTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   int n = ++hits_;
                   last_body_ = req.body;
                   handler_(n, res);
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::unique_ptr<HttpChatBackend> Backend() {
    BackendConfig config;
    config.kind = BackendKind::kHttpChat;
    config.model_id = "test-model";
    config.endpoint =
        "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
    config.request_timeout = std::chrono::seconds(5);
    auto backend = std::make_unique<HttpChatBackend>(config);
    backend->set_sleeper([](std::chrono::milliseconds) {});
    return backend;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::string last_body_;
  std::function<void(int, httplib::Response&)> handler_;
};

constexpr const char* kOkReply = R"({
  "choices": [{"message": {"role": "assistant", "content": "```rust\nfn f(){}\n```"},
               "finish_reason": "stop"}],
  "usage": {"prompt_tokens": 12, "completion_tokens": 30,
            "completion_tokens_details": {"reasoning_tokens": 20}}})";

TEST_F(HttpBackendTest, ParsesReplyAndSplitsReasoning) {
  handler_ = [](int, httplib::Response& res) {
    res.set_content(kOkReply, "application/json");
  };
  auto backend = Backend();
  Completion c = backend->Complete(Ask("hello"));
  EXPECT_EQ(c.text, "```rust\nfn f(){}\n```");
  EXPECT_EQ(c.usage, (TokenUsage{12, 10, 20}));
  auto sent = nlohmann::json::parse(last_body_);
  EXPECT_EQ(sent["model"], "test-model");
  EXPECT_DOUBLE_EQ(sent["temperature"].get<double>(), 0.7);
  EXPECT_EQ(sent["messages"][0]["content"], "hello");
}

TEST_F(HttpBackendTest, RetriesTransportErrors) {
  handler_ = [](int n, httplib::Response& res) {
    if (n < 3) {
      res.status = 503;
      res.set_content("busy", "text/plain");
    } else {
      res.set_content(kOkReply, "application/json");
    }
  };
  auto backend = Backend();
  EXPECT_EQ(backend->Complete(Ask("q")).usage.prompt, 12);
  EXPECT_EQ(hits_.load(), 3);
}

TEST_F(HttpBackendTest, ContentFilterSurfacesImmediately) {
  handler_ = [](int, httplib::Response& res) {
    res.status = 400;
    res.set_content(
        R"({"error":{"code":"content_filter","message":"The response was filtered due to the prompt triggering Azure OpenAI's content management policy."}})",
        "application/json");
  };
  auto backend = Backend();
  try {
    backend->Complete(Ask("q"));
    FAIL() << "expected LlmError";
  } catch (const LlmError& e) {
    EXPECT_EQ(e.kind(), LlmErrorKind::kContentFilter);
  }
  EXPECT_EQ(hits_.load(), 1);
}

TEST_F(HttpBackendTest, QuotaAndExhaustedRetries) {
  handler_ = [](int, httplib::Response& res) {
    res.status = 429;
    res.set_content(R"({"error":{"type":"insufficient_quota","message":"no"}})",
                    "application/json");
  };
  auto backend = Backend();
  try {
    backend->Complete(Ask("q"));
    FAIL() << "expected LlmError";
  } catch (const LlmError& e) {
    EXPECT_EQ(e.kind(), LlmErrorKind::kQuota);
  }
  EXPECT_EQ(hits_.load(), 1);
  handler_ = [](int, httplib::Response& res) { res.status = 500; };
  hits_ = 0;
  EXPECT_THROW(backend->Complete(Ask("q")), LlmError);
  EXPECT_EQ(hits_.load(), 4);  // one try plus three retries
}

TEST(HttpParseTest, FinishReasonContentFilter) {
  EXPECT_THROW(
      ParseChatResponse(
          200, R"({"choices":[{"message":{"content":null},"finish_reason":"content_filter"}]})"),
      LlmError);
  EXPECT_THROW(ParseChatResponse(200, "not json"), LlmError);
}

}  // namespace
}  // namespace transcheck::llm
