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

#include "transcheck/perturb/self_check.h"

#include <algorithm>
#include <map>
#include <set>

#include "transcheck/checkers/harness_generator.h"
#include "transcheck/checkers/toolchain_checker.h"
#include "transcheck/corpus/c_lexer.h"
#include "transcheck/support/subprocess.h"
#include "transcheck/support/text.h"

namespace transcheck::perturb {

namespace fs = std::filesystem;

std::string_view ToString(Verdict verdict) {
  switch (verdict) {
    case Verdict::kEquivalent:
      return "equivalent-within-budget";
    case Verdict::kCounterexample:
      return "counterexample";
    case Verdict::kCompileFailure:
      return "compile-failure";
    case Verdict::kInfraError:
      return "infra-error";
  }
  return "?";
}

std::optional<Verdict> ParseVerdict(std::string_view text) {
  for (Verdict v : {Verdict::kEquivalent, Verdict::kCounterexample,
                    Verdict::kCompileFailure, Verdict::kInfraError}) {
    if (ToString(v) == text) return v;
  }
  return std::nullopt;
}

nlohmann::json ToJson(const SelfCheckResult& result) {
  nlohmann::json j;
  j["verdict"] = ToString(result.verdict);
  j["fuzzed"] = result.fuzzed;
  j["note"] = result.note;
  j["diagnostics"] = result.diagnostics;
  j["executions"] = result.executions;
  j["counterexample"] = result.counterexample
                            ? checkers::ToJson(*result.counterexample)
                            : nlohmann::json(nullptr);
  j["infra_error"] = result.infra_error ? nlohmann::json(ToString(*result.infra_error))
                                        : nlohmann::json(nullptr);
  return j;
}

namespace {

std::vector<std::string> CodeStream(std::string_view text, bool* uses_line) {
  std::vector<std::string> out;
  for (const corpus::Token& t : corpus::Lex(text)) {
    if (!t.IsSignificant()) continue;
    if (t.text == "__LINE__") *uses_line = true;
    out.push_back(t.text);
  }
  return out;
}

// True when the perturbed file is the original under a consistent, injective
// renaming onto fresh identifiers that never occur in a directive.
bool AlphaEquivalent(std::string_view original, std::string_view perturbed) {
  std::vector<corpus::Token> a, b;
  for (corpus::Token& t : corpus::Lex(original)) {
    if (t.IsSignificant()) a.push_back(std::move(t));
  }
  for (corpus::Token& t : corpus::Lex(perturbed)) {
    if (t.IsSignificant()) b.push_back(std::move(t));
  }
  if (a.size() != b.size()) return false;
  std::map<std::string, std::string> forward, backward;
  std::set<std::string> names_a, names_b;
  for (const auto& t : a) names_a.insert(t.text);
  for (const auto& t : b) names_b.insert(t.text);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].text == "__func__" || a[i].text == "__LINE__") return false;
    if (a[i].text == b[i].text) {
      if (forward.count(a[i].text) && forward[a[i].text] != a[i].text) return false;
      forward[a[i].text] = a[i].text;
      backward[b[i].text] = a[i].text;
      continue;
    }
    if (a[i].kind != corpus::TokenKind::kIdentifier ||
        b[i].kind != corpus::TokenKind::kIdentifier || a[i].in_directive ||
        b[i].in_directive) {
      return false;
    }
    if (names_a.count(b[i].text) || names_b.count(a[i].text)) return false;
    auto [f, fresh_f] = forward.emplace(a[i].text, b[i].text);
    auto [r, fresh_r] = backward.emplace(b[i].text, a[i].text);
    if (f->second != b[i].text || r->second != a[i].text) return false;
  }
  return true;
}

SelfCheckResult Infra(ErrorCategory category, std::string note) {
  SelfCheckResult r;
  r.verdict = Verdict::kInfraError;
  r.infra_error = category;
  r.note = std::move(note);
  return r;
}

// Empty on success, clang's diagnostics otherwise.
std::optional<std::string> SyntaxCheck(const checkers::ToolchainConfig& tc,
                                       const fs::path& file,
                                       const fs::path& origin) {
  ProcessRequest req;
  req.argv = {tc.clang, "-fsyntax-only", "-w", "-fno-color-diagnostics"};
  if (!origin.empty()) req.argv.push_back("-I" + origin.string());
  req.argv.push_back(file.string());
  req.timeout = std::chrono::minutes(2);
  ProcessResult r = RunProcess(req);
  if (r.ok()) return std::nullopt;
  return r.err.empty() ? r.launch_error : r.err;
}

}  // namespace

SelfCheckResult SelfCheck(const corpus::SourceUnit& original,
                          const PerturbedUnit& perturbed,
                          std::chrono::seconds budget, const fs::path& workdir,
                          const checkers::ToolchainConfig& toolchain,
                          checkers::FuzzConfig fuzz) {
  if (perturbed.text == original.text) {
    SelfCheckResult r;
    r.note = "text unchanged";
    return r;
  }
  if (!FindProgram(toolchain.clang)) {
    return Infra(ErrorCategory::kTranslationSystem, "clang not found: " + toolchain.clang);
  }
  fs::create_directories(workdir);
  fs::path a = workdir / "original.c";
  fs::path b = workdir / "perturbed.c";
  WriteFileAtomic(a, original.text);
  WriteFileAtomic(b, perturbed.text);
  for (const auto& [path, label] : {std::pair{a, "original"}, std::pair{b, "perturbed"}}) {
    if (auto diag = SyntaxCheck(toolchain, path, original.origin_dir)) {
      SelfCheckResult r;
      r.verdict = Verdict::kCompileFailure;
      r.note = std::string(label) + " does not compile";
      r.diagnostics.push_back(*diag);
      return r;
    }
  }
  bool uses_line = false;
  if (CodeStream(original.text, &uses_line) == CodeStream(perturbed.text, &uses_line) &&
      !uses_line) {
    SelfCheckResult r;
    r.note = "same token stream";
    return r;
  }
  if (AlphaEquivalent(original.text, perturbed.text)) {
    SelfCheckResult r;
    r.note = "same token stream up to a consistent renaming";
    return r;
  }
  auto targets = original.FuzzTargets();
  if (targets.empty()) {
    SelfCheckResult r;
    r.note = "no fuzz targets; compile check only";
    return r;
  }
  std::map<std::string, checkers::SideBinding> bindings;
  for (const corpus::FunctionInterface* f : targets) {
    checkers::SideBinding b = checkers::IdentityBinding(*f);
    if (auto it = perturbed.renames.find(f->name); it != perturbed.renames.end()) {
      b.function = it->second;
    }
    if (auto it = perturbed.param_orders.find(f->name);
        it != perturbed.param_orders.end()) {
      b.param_order = it->second;
    }
    for (const corpus::NamedType& g : f->globals) {
      if (auto it = perturbed.renames.find(g.name); it != perturbed.renames.end()) {
        b.globals[g.name] = it->second;
      }
    }
    bindings[f->name] = b;
  }
  auto per_function = std::max<std::chrono::seconds>(
      std::chrono::seconds(1),
      budget / static_cast<long>(targets.size()));
  fuzz.timeout = per_function;
  checkers::DifferentialHarness harness(toolchain, fuzz, workdir / "harness");
  if (auto failed = harness.Build(
          original, checkers::SideB::C(perturbed.text, "perturbed.c",
                                       original.origin_dir, bindings))) {
    SelfCheckResult r = Infra(failed->infra_error.value_or(ErrorCategory::kFuzzingSetup),
                              "harness build failed");
    r.diagnostics = failed->diagnostics;
    return r;
  }
  checkers::CheckReport report = harness.FuzzAll(per_function);
  SelfCheckResult r;
  r.fuzzed = true;
  r.executions = report.executions;
  r.diagnostics = report.diagnostics;
  if (report.infra_error) {
    r.verdict = Verdict::kInfraError;
    r.infra_error = report.infra_error;
    r.note = "fuzzing failed";
  } else if (report.counterexample) {
    r.verdict = Verdict::kCounterexample;
    r.counterexample = report.counterexample;
    r.note = "behaviour differs in " + report.counterexample->function;
  } else {
    r.note = std::to_string(targets.size()) + " target(s) fuzzed";
  }
  return r;
}

}  // namespace transcheck::perturb
