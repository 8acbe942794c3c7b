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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>

#include "transcheck/corpus/c_lexer.h"
#include "transcheck/corpus/c_parser.h"
#include "transcheck/corpus/corpus.h"
#include "transcheck/llm/scripted_backend.h"
#include "transcheck/perturb/perturbation.h"
#include "transcheck/perturb/self_check.h"
#include "transcheck/support/subprocess.h"
#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck::perturb {
namespace {

namespace fs = std::filesystem;
using corpus::MakeSourceUnit;
using corpus::SourceUnit;

const fs::path kCorpus = fs::path(TC_FIXTURE_DIR) / "perturb" / "corpus";

const PerturbationSpec& Spec(std::string_view id) {
  const PerturbationSpec* spec = FindPerturbation(id);
  EXPECT_NE(spec, nullptr) << id;
  return *spec;
}

std::string Perturb(std::string_view id, const std::string& text, std::uint64_t seed = 1) {
  return Apply(Spec(id), MakeSourceUnit("t.c", text), seed).text;
}

std::vector<std::string> Significant(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : corpus::Lex(text)) {
    if (t.IsSignificant()) out.push_back(t.text);
  }
  return out;
}

const std::vector<SourceUnit>& Corpus() {
  static const std::vector<SourceUnit> units = corpus::LoadCorpus(kCorpus).units;
  return units;
}

// ---- registry ----------------------------------------------------------

TEST(RegistryTest, NamedPerturbationsAndLevels) {
  std::set<std::string> ids;
  std::set<Level> levels;
  for (const PerturbationSpec& s : Registry()) {
    EXPECT_TRUE(ids.insert(s.id).second) << "duplicate " << s.id;
    levels.insert(s.level);
  }
  for (const char* id :
       {"identity", "comment-roundtrip", "comment-typos", "comment-removal",
        "comment-insertion", "indentation-reformat", "identifier-typos",
        "naming-convention", "short-identifiers", "identifier-roundtrip",
        "identifier-improvement", "constant-insertion", "dead-code",
        "declaration-insertion", "function-extraction", "signature-change",
        "loop-swap", "condition-swap", "condition-duplication", "de-morgan"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
  for (Level l : {Level::kI, Level::kII, Level::kIII, Level::kIV, Level::kV,
                  Level::kVI}) {
    EXPECT_TRUE(levels.count(l)) << ToString(l);
  }
  EXPECT_EQ(Registry().front().id, "identity");
  EXPECT_TRUE(Registry().front().identity());
  EXPECT_EQ(Spec("de-morgan").level, Level::kVI);
  EXPECT_EQ(Spec("de-morgan").mode, Mode::kDeterministic);
  EXPECT_TRUE(Spec("comment-roundtrip").needs_model);
  EXPECT_EQ(ParseLevel("IV"), Level::kIV);
}

TEST(RegistryTest, DefaultSeedsDependOnEveryPart) {
  std::uint64_t s = DefaultSeed("a.c", "dead-code", 0);
  EXPECT_EQ(s, DefaultSeed("a.c", "dead-code", 0));
  EXPECT_NE(s, DefaultSeed("b.c", "dead-code", 0));
  EXPECT_NE(s, DefaultSeed("a.c", "comment-typos", 0));
  EXPECT_NE(s, DefaultSeed("a.c", "dead-code", 1));
}

// ---- transformations -------------------------------------------------------

TEST(PerturbTest, IdentityIsByteEqual) {
  for (const SourceUnit& unit : Corpus()) {
    PerturbedUnit p = Apply(Spec("identity"), unit, 3);
    EXPECT_TRUE(p.identity);
    EXPECT_EQ(p.text, unit.text);
  }
}

TEST(PerturbTest, DeMorganExample) {
  std::string src = "int f(int a, int b) {\n  if (!(a && b)) return 1;\n  return 0;\n}\n";
  EXPECT_EQ(Perturb("de-morgan", src),
            "int f(int a, int b) {\n  if (!a || !b) return 1;\n  return 0;\n}\n");
}

// Tiny evaluator for !, &&, || over a, b, c and 0/1 with parentheses.
class BoolEval {
 public:
  BoolEval(std::vector<std::string> tokens, std::map<std::string, bool> env)
      : t_(std::move(tokens)), env_(std::move(env)) {}
  bool Eval() {
    bool v = Or();
    EXPECT_EQ(pos_, t_.size()) << "trailing tokens";
    return v;
  }

 private:
  bool Or() {
    bool v = And();
    while (Peek("||")) {
      ++pos_;
      bool r = And();
      v = v || r;
    }
    return v;
  }
  bool And() {
    bool v = Unary();
    while (Peek("&&")) {
      ++pos_;
      bool r = Unary();
      v = v && r;
    }
    return v;
  }
  bool Unary() {
    if (Peek("!")) {
      ++pos_;
      return !Unary();
    }
    if (Peek("(")) {
      ++pos_;
      bool v = Or();
      EXPECT_TRUE(Peek(")"));
      ++pos_;
      return v;
    }
    const std::string& tok = t_.at(pos_++);
    if (tok == "0" || tok == "1") return tok == "1";
    return env_.at(tok);
  }
  bool Peek(const char* s) const { return pos_ < t_.size() && t_[pos_] == s; }

  std::vector<std::string> t_;
  std::map<std::string, bool> env_;
  std::size_t pos_ = 0;
};

std::vector<std::string> ReturnExpression(const std::string& text) {
  std::vector<std::string> tokens = Significant(text);
  auto it = std::find(tokens.begin(), tokens.end(), "return");
  auto end = std::find(it, tokens.end(), ";");
  return {it + 1, end};
}

std::vector<std::string> IfCondition(const std::string& text) {
  std::vector<std::string> tokens = Significant(text);
  auto it = std::find(tokens.begin(), tokens.end(), "if");
  // Matching parenthesis of the condition.
  int depth = 0;
  auto p = it + 1;
  for (; p != tokens.end(); ++p) {
    if (*p == "(") ++depth;
    if (*p == ")" && --depth == 0) break;
  }
  return {it + 2, p};
}

TEST(PerturbTest, DeMorganMatchesTruthTables) {
  const std::vector<std::string> exprs = {
      "!(a && b)",         "!(a || b)",        "!(a || b || c)",
      "!(a && (b || c))",  "!(a || b && c)",   "!(!a && b)",
      "!(a && b) && c",    "c || !(a && !b)",  "!((a) || (b && c))",
      "a && b",            "a || b && c",      "!a || (b && c)"};
  for (const std::string& e : exprs) {
    for (const char* form : {"return", "if"}) {
      std::string src = std::string(form) == "return"
                            ? "int f(int a, int b, int c) {\n  return " + e + ";\n}\n"
                            : "int f(int a, int b, int c) {\n  if (" + e +
                                  ") { return 1; }\n  return 0;\n}\n";
      std::string out = Perturb("de-morgan", src);
      auto before = std::string(form) == "return" ? ReturnExpression(src) : IfCondition(src);
      auto after = std::string(form) == "return" ? ReturnExpression(out) : IfCondition(out);
      for (int bits = 0; bits < 8; ++bits) {
        std::map<std::string, bool> env = {
            {"a", (bits & 1) != 0}, {"b", (bits & 2) != 0}, {"c", (bits & 4) != 0}};
        EXPECT_EQ(BoolEval(before, env).Eval(), BoolEval(after, env).Eval())
            << e << " -> " << Join(after, " ") << " at " << bits;
      }
    }
  }
  // Something was rewritten for each shape that has a negated group.
  EXPECT_NE(Perturb("de-morgan", "int f(int a, int b) { return !(a || b); }\n"),
            "int f(int a, int b) { return !(a || b); }\n");
}

TEST(PerturbTest, LoopSwapExample) {
  std::string src = "int f(int n) {\n  int i, s = 0;\n  for(i=0;i<n;i++){s+=i;}\n  return s;\n}\n";
  std::string out = Perturb("loop-swap", src);
  EXPECT_NE(out.find("i=0; while(i<n){s+=i; i++;}"), std::string::npos) << out;
}

TEST(PerturbTest, LoopSwapKeepsContinueLoopsAndDoWhile) {
  std::string src =
      "int f(int n) {\n  int s = 0;\n  for (int i = 0; i < n; i++) { if (i == 2) continue; s += i; }\n"
      "  do { s--; } while (s > 100);\n  return s;\n}\n";
  EXPECT_EQ(Perturb("loop-swap", src), src);
  std::string w = "int g(int n) {\n  while (n > 0) { n--; }\n  return n;\n}\n";
  EXPECT_EQ(Perturb("loop-swap", w),
            "int g(int n) {\n  for (; n > 0;) { n--; }\n  return n;\n}\n");
}

TEST(PerturbTest, ConditionDuplicationExample) {
  std::string src = "int f(int x) {\n  if (x>0) return 1;\n  return 0;\n}\n";
  EXPECT_EQ(Perturb("condition-duplication", src),
            "int f(int x) {\n  if ((x>0) && (x>0)) return 1;\n  return 0;\n}\n");
  std::string calls = "int g(void);\nint f(int x) {\n  if (g() > x) return 1;\n  while (x++ < 3) {}\n  return 0;\n}\n";
  EXPECT_EQ(Perturb("condition-duplication", calls), calls);
}

TEST(PerturbTest, ConditionSwapNegatesAndSwaps) {
  std::string src = "int f(int x) {\n  if (x < 3) { return 1; } else { return 2; }\n}\n";
  EXPECT_EQ(Perturb("condition-swap", src),
            "int f(int x) {\n  if (!(x < 3)) { return 2; } else { return 1; }\n}\n");
}

TEST(PerturbTest, ShortIdentifierRename) {
  std::string src =
      "int sum_all(int count) {\n  int total_sum = 0;\n"
      "  for (int i = 0; i < count; i++) total_sum += i;\n  return total_sum;\n}\n";
  PerturbedUnit p = Apply(Spec("short-identifiers"), MakeSourceUnit("t.c", src), 1);
  EXPECT_EQ(p.renames.at("sum_all"), "a");
  // total_sum is the third renamable name, i is already short.
  EXPECT_NE(p.text.find("int c = 0;"), std::string::npos) << p.text;
  EXPECT_EQ(p.text.find("total_sum"), std::string::npos);
  std::string lone = "int f(void) {\n  int total_sum = 4;\n  return total_sum;\n}\n";
  std::string out = Perturb("short-identifiers", lone);
  EXPECT_NE(out.find("int a = 4;"), std::string::npos) << out;
  EXPECT_NE(out.find("return a;"), std::string::npos);
}

TEST(PerturbTest, RenamingLeavesMembersAndLibraryNamesAlone) {
  std::string src =
      "#include <string.h>\nstruct point { int x; int y; };\n"
      "int norm(struct point p, const char *label) {\n  int x = p.x;\n"
      "  return x + p.y + (int)strlen(label);\n}\n";
  for (const char* id : {"short-identifiers", "naming-convention", "identifier-typos"}) {
    std::string out = Perturb(id, src, 5);
    EXPECT_NE(out.find("p.x"), std::string::npos) << id << "\n" << out;
    EXPECT_NE(out.find("int x; int y;"), std::string::npos) << id;
    EXPECT_NE(out.find("strlen("), std::string::npos) << id;
  }
}

// Identifier tokens map position by position through one injective map.
void ExpectConsistentRenaming(const std::string& before, const std::string& after,
                              const std::string& label) {
  auto ids = [](std::string_view text) {
    std::vector<std::string> out;
    for (const auto& t : corpus::Lex(text)) {
      if (t.kind == corpus::TokenKind::kIdentifier) out.push_back(t.text);
    }
    return out;
  };
  std::vector<std::string> a = ids(before), b = ids(after);
  ASSERT_EQ(a.size(), b.size()) << label;
  std::map<std::string, std::string> forward, backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [f, fresh_f] = forward.emplace(a[i], b[i]);
    auto [r, fresh_r] = backward.emplace(b[i], a[i]);
    EXPECT_EQ(f->second, b[i]) << label << ": " << a[i];
    EXPECT_EQ(r->second, a[i]) << label << ": " << b[i];
  }
  std::map<std::string, int> count_a, count_b;
  for (const auto& s : a) ++count_a[forward[s]];
  for (const auto& s : b) ++count_b[s];
  EXPECT_EQ(count_a, count_b) << label;
}

TEST(PerturbTest, IdentifierPerturbationsRenameConsistently) {
  for (const SourceUnit& unit : Corpus()) {
    for (const char* id : {"short-identifiers", "naming-convention", "identifier-typos"}) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        PerturbedUnit p = Apply(Spec(id), unit, seed);
        ExpectConsistentRenaming(unit.text, p.text, unit.id + " " + id);
      }
    }
  }
}

TEST(PerturbTest, SignatureChangeUpdatesCallSites) {
  SourceUnit unit = *corpus::LoadCorpus(kCorpus).Find("gcd.c");
  PerturbedUnit p = Apply(Spec("signature-change"), unit, 1);
  EXPECT_NE(p.text.find("gcd_pair(unsigned int second_value, unsigned int first_value)"),
            std::string::npos);
  EXPECT_NE(p.text.find("a / gcd_pair(b, a) * b"), std::string::npos);
  EXPECT_EQ(p.param_orders.at("gcd_pair"), (std::vector<std::size_t>{1, 0}));
  std::string taken = "int f(int a, int b) { return a - b; }\nint (*fp)(int, int) = f;\n";
  EXPECT_EQ(Perturb("signature-change", taken), taken);
  std::string effects = "int f(int a, int b) { return a - b; }\nint g(int x) { return f(x++, x); }\n";
  EXPECT_EQ(Perturb("signature-change", effects), effects);
}

TEST(PerturbTest, LayoutPerturbationsKeepTheTokenStream) {
  for (const SourceUnit& unit : Corpus()) {
    for (const char* id : {"comment-removal", "indentation-reformat", "comment-typos"}) {
      std::string out = Apply(Spec(id), unit, 9).text;
      EXPECT_EQ(Significant(out), Significant(unit.text)) << unit.id << " " << id;
    }
    std::string stripped = Apply(Spec("comment-removal"), unit, 0).text;
    for (const auto& t : corpus::Lex(stripped)) EXPECT_FALSE(t.IsComment()) << unit.id;
  }
}

TEST(PerturbTest, InapplicablePerturbationIsANoOp) {
  std::string src = "int f(int x) { return x; }\n";
  PerturbedUnit p = Apply(Spec("comment-removal"), MakeSourceUnit("t.c", src), 0);
  EXPECT_EQ(p.text, src);
  ASSERT_FALSE(p.notes.empty());
  EXPECT_TRUE(StartsWith(p.notes[0], "no-op"));
}

TEST(PerturbTest, EveryOfflinePerturbationKeepsTheInterface) {
  for (const SourceUnit& unit : Corpus()) {
    for (const PerturbationSpec& spec : Registry()) {
      if (spec.needs_model) continue;
      PerturbedUnit p = Apply(spec, unit, 11);
      corpus::ParsedFile parsed = corpus::ParseFile(p.text);
      EXPECT_TRUE(parsed.errors.empty()) << unit.id << " " << spec.id << "\n" << p.text;
      SourceUnit again = ToSourceUnit(p, unit);
      EXPECT_EQ(again.FuzzTargets().size(), unit.FuzzTargets().size())
          << unit.id << " " << spec.id;
    }
  }
}

TEST(PerturbTest, StochasticPerturbationsArePureInTheSeed) {
  for (const SourceUnit& unit : Corpus()) {
    for (const char* id : {"comment-typos", "identifier-typos", "dead-code"}) {
      PerturbedUnit a = Apply(Spec(id), unit, 42);
      PerturbedUnit b = Apply(Spec(id), unit, 42);
      EXPECT_EQ(a.text, b.text);
      EXPECT_EQ(a.seed, 42u);
    }
  }
  std::set<std::string> variants;
  const SourceUnit& unit = Corpus().front();
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    variants.insert(Apply(Spec("dead-code"), unit, seed).text);
  }
  EXPECT_GT(variants.size(), 1u);
}

// ---- model-assisted ----------------------------------------------------------

std::unique_ptr<llm::ScriptedBackend> Scripted(const std::string& json) {
  llm::BackendConfig config;
  config.model_id = "scripted";
  return std::make_unique<llm::ScriptedBackend>(
      config, llm::ParseScript(nlohmann::json::parse(json)));
}

TEST(ModelPerturbTest, NeedsABackend) {
  EXPECT_THROW(Apply(Spec("comment-roundtrip"), Corpus().front(), 0),
               std::invalid_argument);
}

TEST(ModelPerturbTest, CommentRoundTripReplacesBodies) {
  std::string src = "// add two numbers\nint add(int a, int b) { return a + b; /* sum */ }\n";
  auto model = Scripted(R"([
      {"response": "[\"zwei Zahlen addieren\", \"Summe\"]"},
      {"response": "```json\n[\"adds two numbers\", \"the sum\"]\n```"}])");
  PerturbedUnit p = Apply(Spec("comment-roundtrip"), MakeSourceUnit("t.c", src), 0,
                          model.get());
  EXPECT_EQ(p.text,
            "// adds two numbers\nint add(int a, int b) { return a + b; /* the sum */ }\n");
}

TEST(ModelPerturbTest, IdentifierImprovementUsesFreshNamesOnly) {
  std::string src = "int f(int a, int b) {\n  int t = a * b;\n  return t;\n}\n";
  auto model = Scripted(
      R"([{"response": "{\"f\": \"product\", \"a\": \"left\", \"b\": \"for\", \"t\": \"left\"}"}])");
  PerturbedUnit p = Apply(Spec("identifier-improvement"), MakeSourceUnit("t.c", src), 0,
                          model.get());
  EXPECT_EQ(p.text, "int product(int left, int b) {\n  int t = left * b;\n  return t;\n}\n");
  EXPECT_EQ(p.renames.at("f"), "product");
}

TEST(ModelPerturbTest, RefusalIsAnLlmApiError) {
  auto model = Scripted(R"([{"error": "content_filter"}])");
  try {
    Apply(Spec("comment-insertion"), Corpus().front(), 0, model.get());
    FAIL() << "expected an error";
  } catch (const PerturbationError& e) {
    EXPECT_EQ(e.category(), ErrorCategory::kLlmApi);
  }
  auto junk = Scripted(R"([{"response": "I cannot help with that."}])");
  EXPECT_THROW(Apply(Spec("comment-insertion"), Corpus().front(), 0, junk.get()),
               PerturbationError);
}

TEST(ModelPerturbTest, FunctionExtractionValidatesTheReply) {
  std::string src = "int twice(int x) { return x + x; }\n";
  auto good = Scripted(
      "[{\"response\": \"```c\\nstatic int helper(int v) { return v + v; }\\n"
      "int twice(int x) { return helper(x); }\\n```\"}]");
  PerturbedUnit p =
      Apply(Spec("function-extraction"), MakeSourceUnit("t.c", src), 0, good.get());
  EXPECT_NE(p.text.find("helper"), std::string::npos);
  auto dropped = Scripted("[{\"response\": \"```c\\nint thrice(int x) { return 3 * x; }\\n```\"}]");
  EXPECT_THROW(
      Apply(Spec("function-extraction"), MakeSourceUnit("t.c", src), 0, dropped.get()),
      PerturbationError);
}

// ---- sampling -------------------------------------------------------------

TEST(SampleSetsTest, FullSizeSetsEqualTheRegistry) {
  std::vector<std::string> ids = RegistryIds();
  auto sets = SampleSets(ids, ids.size(), 5, 1);
  ASSERT_EQ(sets.size(), 5u);
  for (const auto& s : sets) EXPECT_EQ(s, ids);
}

TEST(SampleSetsTest, SeededAndAlwaysWithIdentity) {
  std::vector<std::string> ids = RegistryIds();
  auto a = SampleSets(ids, 5, 10000, 77);
  auto b = SampleSets(ids, 5, 10000, 77);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, SampleSets(ids, 5, 10000, 78));
  ASSERT_EQ(a.size(), 10000u);
  std::map<std::string, int> freq;
  for (const auto& s : a) {
    EXPECT_EQ(s.size(), 5u);
    EXPECT_EQ(std::set<std::string>(s.begin(), s.end()).size(), 5u);
    EXPECT_TRUE(std::count(s.begin(), s.end(), "identity"));
    for (const auto& id : s) ++freq[id];
  }
  // Non-identity ids appear with probability 4/19 each.
  for (const auto& id : ids) {
    if (id == "identity") continue;
    EXPECT_NEAR(freq[id] / 10000.0, 4.0 / 19.0, 0.03) << id;
  }
  auto twenty = SampleSets(ids, 20, 10000, 3);
  EXPECT_EQ(twenty.size(), 10000u);
  EXPECT_THROW(SampleSets(ids, ids.size() + 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(SampleSets(ids, 0, 1, 0), std::invalid_argument);
}

// ---- self-check -------------------------------------------------------------

class SelfCheckTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!FindProgram("clang")) GTEST_SKIP() << "clang missing";
    work_ = std::make_unique<Workdir>("perturb-test");
  }
  const SourceUnit& Unit(const std::string& id) {
    const SourceUnit* u = nullptr;
    for (const auto& unit : Corpus()) {
      if (unit.id == id) u = &unit;
    }
    EXPECT_NE(u, nullptr) << id;
    return *u;
  }
  std::unique_ptr<Workdir> work_;
};

TEST_F(SelfCheckTest, IdentityIsEquivalentWithoutFuzzing) {
  const SourceUnit& unit = Unit("clamp.c");
  SelfCheckResult r = SelfCheck(unit, Apply(Spec("identity"), unit, 0),
                                std::chrono::seconds(2), work_->path() / "id");
  EXPECT_EQ(r.verdict, Verdict::kEquivalent);
  EXPECT_FALSE(r.fuzzed);
}

TEST_F(SelfCheckTest, DeMorganIsEquivalent) {
  const SourceUnit& unit = Unit("clamp.c");
  SelfCheckResult r = SelfCheck(unit, Apply(Spec("de-morgan"), unit, 0),
                                std::chrono::seconds(4), work_->path() / "dm");
  EXPECT_EQ(r.verdict, Verdict::kEquivalent) << ToJson(r).dump(2);
  EXPECT_TRUE(r.fuzzed);
  EXPECT_GT(r.executions, 0u);
}

TEST_F(SelfCheckTest, RenamesAndReorderedParametersAreBound) {
  const SourceUnit& gcd = Unit("gcd.c");
  SelfCheckResult sig = SelfCheck(gcd, Apply(Spec("signature-change"), gcd, 0),
                                  std::chrono::seconds(4), work_->path() / "sig");
  EXPECT_EQ(sig.verdict, Verdict::kEquivalent) << ToJson(sig).dump(2);
  // Renamed globals and functions plus a loop rewrite, so fuzzing is needed.
  const SourceUnit& counter = Unit("counter.c");
  PerturbedUnit renamed = Apply(Spec("short-identifiers"), counter, 0);
  ASSERT_FALSE(renamed.renames.empty());
  PerturbedUnit both = renamed;
  both.text = Apply(Spec("loop-swap"), MakeSourceUnit("counter.c", renamed.text), 0).text;
  ASSERT_NE(both.text, renamed.text);
  SelfCheckResult names = SelfCheck(counter, both, std::chrono::seconds(4),
                                    work_->path() / "names");
  EXPECT_EQ(names.verdict, Verdict::kEquivalent) << ToJson(names).dump(2);
  EXPECT_TRUE(names.fuzzed);
}

TEST_F(SelfCheckTest, PureRenamesNeedNoFuzzing) {
  const SourceUnit& counter = Unit("counter.c");
  SelfCheckResult r = SelfCheck(counter, Apply(Spec("short-identifiers"), counter, 0),
                                std::chrono::seconds(4), work_->path() / "alpha");
  EXPECT_EQ(r.verdict, Verdict::kEquivalent);
  EXPECT_FALSE(r.fuzzed);
  // Merging two names is not a renaming.
  SourceUnit unit = MakeSourceUnit("sub.c", "int sub(int a, int b) { return a - b; }\n");
  PerturbedUnit merged;
  merged.text = "int sub(int a, int c) { return a - a; }\n";
  SelfCheckResult m = SelfCheck(unit, merged, std::chrono::seconds(10), work_->path() / "m");
  EXPECT_EQ(m.verdict, Verdict::kCounterexample) << ToJson(m).dump(2);
}

TEST_F(SelfCheckTest, BrokenPerturbationIsCaught) {
  SourceUnit unit = MakeSourceUnit("less.c", "int less(int a, int b) { return a < b; }\n");
  PerturbedUnit broken;
  broken.source_id = unit.id;
  broken.perturbation_id = "broken";
  broken.text = "int less(int a, int b) { return a <= b; }\n";
  SelfCheckResult r = SelfCheck(unit, broken, std::chrono::seconds(10), work_->path() / "b");
  ASSERT_EQ(r.verdict, Verdict::kCounterexample) << ToJson(r).dump(2);
  // Direct evaluation: the two sides only disagree when a == b.
  const auto& in = r.counterexample->inputs;
  ASSERT_EQ(in.size(), 2u);
  EXPECT_EQ(in[0].value, in[1].value);
  EXPECT_EQ(r.counterexample->c_output[0].value, "0");
  EXPECT_EQ((*r.counterexample->rust_output)[0].value, "1");
}

TEST_F(SelfCheckTest, BrokenSyntaxIsACompileFailure) {
  const SourceUnit& unit = Unit("gcd.c");
  PerturbedUnit p = Apply(Spec("identity"), unit, 0);
  p.text += "int oops( {\n";
  SelfCheckResult r = SelfCheck(unit, p, std::chrono::seconds(2), work_->path() / "c");
  EXPECT_EQ(r.verdict, Verdict::kCompileFailure);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST_F(SelfCheckTest, MissingCompilerIsAnInfraError) {
  const SourceUnit& unit = Unit("gcd.c");
  checkers::ToolchainConfig tc;
  tc.clang = "/nonexistent/clang";
  SelfCheckResult r = SelfCheck(unit, Apply(Spec("loop-swap"), unit, 0),
                                std::chrono::seconds(2), work_->path() / "m", tc);
  EXPECT_EQ(r.verdict, Verdict::kInfraError);
  EXPECT_EQ(r.infra_error, ErrorCategory::kTranslationSystem);
}

}  // namespace
}  // namespace transcheck::perturb
