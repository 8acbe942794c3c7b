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

#include "transcheck/checkers/simulated_checker.h"

#include <stdexcept>

#include "transcheck/support/text.h"

namespace transcheck::checkers {

std::vector<SimulatedRule> ParseSimulatedRules(const nlohmann::json& j) {
  const nlohmann::json& list = j.is_array() ? j : j.at("rules");
  std::vector<SimulatedRule> rules;
  for (const nlohmann::json& r : list) {
    SimulatedRule rule;
    rule.match = r.value("match", "");
    auto stage = ParseCheckStage(r.value("stage", "Compiled"));
    if (!stage) {
      throw std::invalid_argument("unknown stage in simulated rule: " +
                                  r.value("stage", ""));
    }
    rule.stage = *stage;
    std::string result = r.value("result", "fail");
    if (result == "pass") {
      rule.result = SimulatedRule::Result::kPass;
    } else if (result == "fail") {
      rule.result = SimulatedRule::Result::kFail;
    } else if (result == "counterexample") {
      if (rule.stage != CheckStage::kFuzzed) {
        throw std::invalid_argument("counterexample rules need stage Fuzzed");
      }
      rule.result = SimulatedRule::Result::kCounterexample;
      if (!r.contains("counterexample")) {
        throw std::invalid_argument("counterexample rule without counterexample");
      }
      rule.counterexample = CounterexampleFromJson(r["counterexample"]);
    } else if (StartsWith(result, "infra:")) {
      auto cat = ParseErrorCategory(result.substr(6));
      if (!cat) throw std::invalid_argument("unknown error category " + result);
      rule.result = SimulatedRule::Result::kInfra;
      rule.infra = *cat;
    } else {
      throw std::invalid_argument("unknown simulated result " + result);
    }
    rule.diagnostics =
        r.value("diagnostics", std::vector<std::string>{});
    rules.push_back(std::move(rule));
  }
  return rules;
}

SimulatedChecker::SimulatedChecker(std::vector<SimulatedRule> rules)
    : rules_(std::move(rules)) {}

SimulatedChecker SimulatedChecker::Load(const std::filesystem::path& path) {
  auto text = ReadFile(path);
  if (!text) throw std::runtime_error("cannot read " + path.string());
  return SimulatedChecker(ParseSimulatedRules(nlohmann::json::parse(*text)));
}

CheckReport SimulatedChecker::Decide(CheckStage stage,
                                     std::string_view source) const {
  for (const SimulatedRule& rule : rules_) {
    if (rule.stage != stage) continue;
    if (source.find(rule.match) == std::string_view::npos) continue;
    switch (rule.result) {
      case SimulatedRule::Result::kPass:
        return MakeSuccess(stage);
      case SimulatedRule::Result::kFail: {
        std::vector<std::string> diags = rule.diagnostics;
        if (diags.empty()) diags.push_back("simulated failure: " + rule.match);
        return MakeFailure(stage, std::move(diags));
      }
      case SimulatedRule::Result::kCounterexample: {
        CheckReport r = MakeFailure(stage, rule.diagnostics);
        r.counterexample = rule.counterexample;
        return r;
      }
      case SimulatedRule::Result::kInfra: {
        std::vector<std::string> diags = rule.diagnostics;
        if (diags.empty()) diags.push_back("simulated infrastructure error");
        return MakeInfraError(stage, rule.infra, std::move(diags));
      }
    }
  }
  return MakeSuccess(stage);
}

CheckReport SimulatedChecker::Compile(std::string_view rust_source,
                                      const std::filesystem::path&) {
  if (Trim(rust_source).empty()) {
    return MakeFailure(CheckStage::kCompiled,
                       {"error: the translation contains no Rust code"});
  }
  return Decide(CheckStage::kCompiled, rust_source);
}

CheckReport SimulatedChecker::Lint(std::string_view rust_source,
                                   const std::filesystem::path&) {
  return Decide(CheckStage::kLinted, rust_source);
}

CheckReport SimulatedChecker::Fuzz(const corpus::SourceUnit& unit,
                                   std::string_view rust_source,
                                   const std::filesystem::path&) {
  if (unit.FuzzTargets().empty()) {
    return MakeInfraError(CheckStage::kFuzzed, ErrorCategory::kFuzzingSetup,
                          {unit.id + ": no fuzzable functions"});
  }
  return Decide(CheckStage::kFuzzed, rust_source);
}

}  // namespace transcheck::checkers
