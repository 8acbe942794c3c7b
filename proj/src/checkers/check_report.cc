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

#include "transcheck/checkers/check_report.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "transcheck/support/text.h"

namespace transcheck::checkers {

namespace {

constexpr std::string_view kHeadPrefix = "Counterexample in function `";
constexpr std::string_view kInputs = "input values: ";
constexpr std::string_view kCOut = "C output: ";
constexpr std::string_view kRustOut = "Rust output: ";
constexpr std::string_view kRuntime = "runtime error (";

std::string RenderValues(const std::vector<NamedValue>& values) {
  if (values.empty()) {
    return "(none)";
  }
  std::string out;
  for (const NamedValue& v : values) {
    if (!out.empty()) {
      out += ", ";
    }
    out += v.name + " = " + v.value;
  }
  return out;
}

// Values may contain ", " themselves (arrays, strings), so splitting looks
// for ", <identifier> = " boundaries outside quotes and brackets.
std::optional<std::vector<NamedValue>> ParseValues(std::string_view text) {
  std::vector<NamedValue> values;
  if (text == "(none)") {
    return values;
  }
  auto is_ident = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == ' ' || c == '.';
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eq = text.find(" = ", pos);
    if (eq == std::string_view::npos) {
      return std::nullopt;
    }
    std::string name(text.substr(pos, eq - pos));
    std::size_t value_begin = eq + 3;
    std::size_t next = std::string_view::npos;
    bool quoted = false;
    int depth = 0;
    for (std::size_t s = value_begin; s + 1 < text.size(); ++s) {
      char c = text[s];
      if (quoted) {
        if (c == '\\') {
          ++s;
        } else if (c == '"') {
          quoted = false;
        }
        continue;
      }
      if (c == '"') {
        quoted = true;
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        --depth;
      } else if (depth == 0 && c == ',' && text[s + 1] == ' ') {
        std::size_t e = text.find(" = ", s + 2);
        if (e == std::string_view::npos) {
          break;
        }
        std::string_view candidate = text.substr(s + 2, e - s - 2);
        if (!candidate.empty() &&
            std::all_of(candidate.begin(), candidate.end(), is_ident)) {
          next = s;
          break;
        }
      }
    }
    std::string value(text.substr(
        value_begin,
        next == std::string_view::npos ? std::string_view::npos
                                       : next - value_begin));
    values.push_back({std::move(name), std::move(value)});
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 2;
  }
  return values;
}

nlohmann::json ValuesJson(const std::vector<NamedValue>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const NamedValue& v : values) {
    out.push_back({{"name", v.name}, {"value", v.value}});
  }
  return out;
}

std::vector<NamedValue> ValuesFromJson(const nlohmann::json& j) {
  std::vector<NamedValue> out;
  for (const auto& v : j) {
    out.push_back({v.at("name").get<std::string>(),
                   v.at("value").get<std::string>()});
  }
  return out;
}

}  // namespace

std::string_view ToString(CheckStage stage) {
  switch (stage) {
    case CheckStage::kCompiled:
      return "Compiled";
    case CheckStage::kLinted:
      return "Linted";
    case CheckStage::kFuzzed:
      return "Fuzzed";
  }
  return "Compiled";
}

std::optional<CheckStage> ParseCheckStage(std::string_view text) {
  for (CheckStage s : kAllStages) {
    if (ToString(s) == text) {
      return s;
    }
  }
  return std::nullopt;
}

std::string_view ToString(FailureKind kind) {
  return kind == FailureKind::kValueMismatch ? "value-mismatch"
                                             : "rust-only-runtime-error";
}

std::optional<FailureKind> ParseFailureKind(std::string_view text) {
  if (text == "value-mismatch") return FailureKind::kValueMismatch;
  if (text == "rust-only-runtime-error") {
    return FailureKind::kRustOnlyRuntimeError;
  }
  return std::nullopt;
}

std::string RenderCounterexample(const Counterexample& cx) {
  std::string out = std::string(kHeadPrefix) + cx.function + "` (" +
                    std::string(ToString(cx.kind)) + "):\n";
  out += std::string(kInputs) + RenderValues(cx.inputs) + "\n";
  out += std::string(kCOut) + RenderValues(cx.c_output) + "\n";
  out += std::string(kRustOut);
  if (cx.kind == FailureKind::kRustOnlyRuntimeError || !cx.rust_output) {
    out += std::string(kRuntime) + cx.detail + ")";
  } else {
    out += RenderValues(*cx.rust_output);
  }
  return out;
}

std::optional<Counterexample> ParseCounterexampleRendering(
    std::string_view text) {
  std::vector<std::string> lines = SplitLines(text);
  if (lines.size() != 4 || !StartsWith(lines[0], kHeadPrefix)) {
    return std::nullopt;
  }
  Counterexample cx;
  std::string_view head = lines[0];
  head.remove_prefix(kHeadPrefix.size());
  std::size_t tick = head.find("` (");
  if (tick == std::string_view::npos || !EndsWith(head, "):")) {
    return std::nullopt;
  }
  cx.function = std::string(head.substr(0, tick));
  auto kind = ParseFailureKind(
      head.substr(tick + 3, head.size() - tick - 3 - 2));
  if (!kind) {
    return std::nullopt;
  }
  cx.kind = *kind;
  if (!StartsWith(lines[1], kInputs) || !StartsWith(lines[2], kCOut) ||
      !StartsWith(lines[3], kRustOut)) {
    return std::nullopt;
  }
  auto inputs = ParseValues(std::string_view(lines[1]).substr(kInputs.size()));
  auto c_out = ParseValues(std::string_view(lines[2]).substr(kCOut.size()));
  if (!inputs || !c_out) {
    return std::nullopt;
  }
  cx.inputs = std::move(*inputs);
  cx.c_output = std::move(*c_out);
  std::string_view rust = std::string_view(lines[3]).substr(kRustOut.size());
  if (cx.kind == FailureKind::kRustOnlyRuntimeError) {
    if (!StartsWith(rust, kRuntime) || !EndsWith(rust, ")")) {
      return std::nullopt;
    }
    cx.detail = std::string(
        rust.substr(kRuntime.size(), rust.size() - kRuntime.size() - 1));
  } else {
    auto r = ParseValues(rust);
    if (!r) {
      return std::nullopt;
    }
    cx.rust_output = std::move(*r);
  }
  return cx;
}

void CheckReport::Validate() const {
  if (success && infra_error) {
    throw std::logic_error("successful report carries an infra error");
  }
  if (counterexample && stage != CheckStage::kFuzzed) {
    throw std::logic_error("counterexample outside the Fuzzed stage");
  }
  if (counterexample && success) {
    throw std::logic_error("successful report carries a counterexample");
  }
  if (counterexample &&
      counterexample->kind == FailureKind::kRustOnlyRuntimeError &&
      counterexample->rust_output) {
    throw std::logic_error("runtime-error counterexample has a Rust output");
  }
}

std::vector<std::string> CheckReport::FeedbackItems() const {
  if (counterexample) {
    return {RenderCounterexample(*counterexample)};
  }
  return diagnostics;
}

CheckReport MakeSuccess(CheckStage stage) {
  CheckReport r;
  r.stage = stage;
  r.success = true;
  return r;
}

CheckReport MakeFailure(CheckStage stage, std::vector<std::string> diagnostics) {
  CheckReport r;
  r.stage = stage;
  r.diagnostics = std::move(diagnostics);
  return r;
}

CheckReport MakeInfraError(CheckStage stage, ErrorCategory category,
                           std::vector<std::string> diagnostics) {
  CheckReport r = MakeFailure(stage, std::move(diagnostics));
  r.infra_error = category;
  return r;
}

nlohmann::json ToJson(const Counterexample& cx) {
  nlohmann::json j;
  j["function"] = cx.function;
  j["failure_kind"] = ToString(cx.kind);
  j["raw_input_hex"] = [&] {
    std::string hex;
    for (unsigned char c : cx.raw_input) {
      static constexpr char kDigits[] = "0123456789abcdef";
      hex += kDigits[c >> 4];
      hex += kDigits[c & 15];
    }
    return hex;
  }();
  j["inputs"] = ValuesJson(cx.inputs);
  j["c_output"] = ValuesJson(cx.c_output);
  j["rust_output"] =
      cx.rust_output ? ValuesJson(*cx.rust_output) : nlohmann::json(nullptr);
  j["detail"] = cx.detail;
  j["artifact"] = cx.artifact;
  return j;
}

Counterexample CounterexampleFromJson(const nlohmann::json& j) {
  Counterexample cx;
  cx.function = j.value("function", "");
  auto kind = ParseFailureKind(j.value("failure_kind", ""));
  if (!kind) {
    throw std::invalid_argument("counterexample has an unknown failure kind");
  }
  cx.kind = *kind;
  std::string hex = j.value("raw_input_hex", "");
  if (hex.size() % 2 != 0) {
    throw std::invalid_argument("odd-length raw input");
  }
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    cx.raw_input.push_back(
        static_cast<char>(std::stoi(hex.substr(i, 2), nullptr, 16)));
  }
  cx.inputs = ValuesFromJson(j.value("inputs", nlohmann::json::array()));
  cx.c_output = ValuesFromJson(j.value("c_output", nlohmann::json::array()));
  if (j.contains("rust_output") && !j["rust_output"].is_null()) {
    cx.rust_output = ValuesFromJson(j["rust_output"]);
  }
  cx.detail = j.value("detail", "");
  cx.artifact = j.value("artifact", "");
  return cx;
}

nlohmann::json ToJson(const CheckReport& report) {
  nlohmann::json j;
  j["stage"] = ToString(report.stage);
  j["success"] = report.success;
  j["diagnostics"] = report.diagnostics;
  j["counterexample"] = report.counterexample
                            ? ToJson(*report.counterexample)
                            : nlohmann::json(nullptr);
  j["infra_error"] = report.infra_error
                         ? nlohmann::json(ToString(*report.infra_error))
                         : nlohmann::json(nullptr);
  if (report.stage == CheckStage::kFuzzed) {
    j["executions"] = report.executions;
    j["seconds"] = report.seconds;
  }
  return j;
}

CheckReport CheckReportFromJson(const nlohmann::json& j) {
  CheckReport r;
  auto stage = ParseCheckStage(j.at("stage").get<std::string>());
  if (!stage) {
    throw std::invalid_argument("unknown check stage");
  }
  r.stage = *stage;
  r.success = j.at("success").get<bool>();
  r.diagnostics = j.value("diagnostics", std::vector<std::string>{});
  if (j.contains("counterexample") && !j["counterexample"].is_null()) {
    r.counterexample = CounterexampleFromJson(j["counterexample"]);
  }
  if (j.contains("infra_error") && !j["infra_error"].is_null()) {
    r.infra_error = ParseErrorCategory(j["infra_error"].get<std::string>());
    if (!r.infra_error) {
      throw std::invalid_argument("unknown error category");
    }
  }
  r.executions = j.value("executions", std::uint64_t{0});
  r.seconds = j.value("seconds", 0.0);
  return r;
}

}  // namespace transcheck::checkers
