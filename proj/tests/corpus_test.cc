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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "transcheck/corpus/c_lexer.h"
#include "transcheck/corpus/c_parser.h"
#include "transcheck/corpus/corpus.h"
#include "transcheck/corpus/interface_extractor.h"
#include "transcheck/corpus/metrics.h"
#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck::corpus {
namespace {

const std::filesystem::path kMetricsDir =
    std::filesystem::path(TC_FIXTURE_DIR) / "metrics";

void Put(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path) << text;
}

TEST(LexerTest, LosslessRoundTrip) {
  std::string src =
      "#include <stdio.h>\n#define SQR(x) ((x)*(x)) \\\n  /* c */\n"
      "int main(void){ char *s = \"a\\\"b\"; return u'x' >>= 2; } // end";
  auto tokens = Lex(src);
  EXPECT_EQ(Render(tokens), src);
  bool saw_header = false;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kHeaderName) {
      saw_header = true;
      EXPECT_EQ(t.text, "<stdio.h>");
      EXPECT_TRUE(t.in_directive);
    }
    if (t.text == ">>=") {
      EXPECT_EQ(t.kind, TokenKind::kPunct);
    }
  }
  EXPECT_TRUE(saw_header);
}

TEST(ParserTest, FunctionsVariablesAndMacros) {
  ParsedFile f = ParseFile(
      "#include \"x.h\"\n#define N 4\n#define SQR(x) ((x)*(x))\n"
      "typedef unsigned short u16_t;\n"
      "static int counter;\nconst int limit = 3;\nint buf[N];\n"
      "int proto(int);\n"
      "u16_t widen(u16_t v, const char *name, double arr[]) { return v; }\n");
  ASSERT_TRUE(f.errors.empty()) << f.errors.front();
  ASSERT_EQ(f.functions.size(), 1u);
  const FunctionDefinition& fn = f.functions[0];
  EXPECT_EQ(fn.name, "widen");
  EXPECT_EQ(fn.return_type, CType::Scalar(ScalarKind::kU16));
  ASSERT_EQ(fn.params.size(), 3u);
  EXPECT_EQ(fn.params[1].type, CType::String(true));
  EXPECT_EQ(fn.params[2].type, CType::Pointer(ScalarKind::kF64, false));
  ASSERT_NE(f.FindVariable("buf"), nullptr);
  EXPECT_EQ(f.FindVariable("buf")->type, CType::Array(ScalarKind::kI32, 4));
  EXPECT_TRUE(f.FindVariable("limit")->is_const);
  EXPECT_TRUE(f.FindVariable("counter")->is_static);
  ASSERT_EQ(f.prototypes.size(), 1u);
  EXPECT_EQ(f.includes, (std::vector<std::string>{"\"x.h\""}));
  ASSERT_EQ(f.macros.size(), 2u);
  EXPECT_TRUE(f.macros[1].function_like);
}

TEST(InterfaceTest, AddSignature) {
  auto ifaces = ExtractInterfaces("int add(int a, int b){ return a + b; }");
  ASSERT_EQ(ifaces.size(), 1u);
  EXPECT_EQ(ifaces[0].name, "add");
  EXPECT_EQ(ifaces[0].return_type, CType::Scalar(ScalarKind::kI32));
  ASSERT_EQ(ifaces[0].params.size(), 2u);
  EXPECT_EQ(ifaces[0].params[0].name, "a");
  EXPECT_EQ(ifaces[0].params[1].type, CType::Scalar(ScalarKind::kI32));
  EXPECT_TRUE(ifaces[0].globals.empty());
  EXPECT_TRUE(ifaces[0].fuzzable());
}

TEST(InterfaceTest, GlobalCounter) {
  auto ifaces =
      ExtractInterfaces("static int counter; void tick(void){counter++;}");
  ASSERT_EQ(ifaces.size(), 1u);
  ASSERT_EQ(ifaces[0].globals.size(), 1u);
  EXPECT_EQ(ifaces[0].globals[0].name, "counter");
  EXPECT_EQ(ifaces[0].globals[0].type, CType::Scalar(ScalarKind::kI32));
  EXPECT_TRUE(ifaces[0].params.empty());
}

TEST(InterfaceTest, GlobalsThroughCalleesAndMemberNames) {
  auto ifaces = ExtractInterfaces(
      "int total; static void bump(int d){ total += d; }\n"
      "void run(int n){ bump(n); }\n");
  ASSERT_EQ(ifaces.size(), 2u);
  EXPECT_EQ(ifaces[1].name, "run");
  ASSERT_EQ(ifaces[1].globals.size(), 1u);
  EXPECT_EQ(ifaces[1].globals[0].name, "total");
}

TEST(InterfaceTest, FunctionLikeMacroFlagged) {
  std::vector<std::string> warnings;
  auto ifaces = ExtractInterfaces("#define SQR(x) ((x)*(x))\n", &warnings);
  ASSERT_EQ(ifaces.size(), 1u);
  EXPECT_TRUE(ifaces[0].macro_like);
  EXPECT_FALSE(ifaces[0].fuzzable());
  EXPECT_FALSE(warnings.empty());
}

TEST(InterfaceTest, UnsupportedParamMarksNonFuzzable) {
  std::vector<std::string> warnings;
  auto ifaces = ExtractInterfaces(
      "struct p { int x; };\nint get(struct p *q){ return q->x; }\n"
      "int apply(int (*f)(int), int v){ return f(v); }\n"
      "int sum(int n, ...){ return n; }\n",
      &warnings);
  ASSERT_EQ(ifaces.size(), 3u);
  for (const auto& iface : ifaces) {
    EXPECT_FALSE(iface.fuzzable()) << iface.name;
  }
  EXPECT_GE(warnings.size(), 3u);
}

TEST(InterfaceTest, Pure) {
  std::string src = "int g; int f(int x){ g = x; return g * 2; }";
  EXPECT_EQ(ExtractInterfaces(src), ExtractInterfaces(src));
}

TEST(MetricsTest, SpecExamples) {
  ApproxTokenizer tok;
  CodeMetrics m = ComputeMetrics(MakeSourceUnit("a.c", "int f(void){return 0;}"),
                                 tok);
  EXPECT_EQ(m.loc, 1u);
  EXPECT_EQ(m.nloc, 1u);
  EXPECT_EQ(m.cc_avg, 1.0);
  m = ComputeMetrics(
      MakeSourceUnit("b.c", "int x;\n// only comment\n\nint y;\n"), tok);
  EXPECT_EQ(m.loc, 4u);
  EXPECT_EQ(m.nloc, 2u);
  m = ComputeMetrics(
      MakeSourceUnit("c.c",
                     "int f(int n){int s=0; if(n){for(;n;n--){s++;}} return s;}"),
      tok);
  EXPECT_EQ(m.cc_max, 3);
}

TEST(MetricsTest, HandCountedFixtures) {
  auto expected = nlohmann::json::parse(*ReadFile(kMetricsDir / "expected.json"));
  ApproxTokenizer tok;
  for (auto& [file, want] : expected.items()) {
    auto text = ReadFile(kMetricsDir / file);
    ASSERT_TRUE(text) << file;
    CodeMetrics m = ComputeMetrics(MakeSourceUnit(file, *text), tok);
    EXPECT_EQ(m.loc, want["loc"].get<std::size_t>()) << file;
    EXPECT_EQ(m.nloc, want["nloc"].get<std::size_t>()) << file;
    EXPECT_EQ(m.functions, want["functions"].get<std::size_t>()) << file;
    if (want["cc_avg"].is_null()) {
      EXPECT_FALSE(m.cc_avg.has_value()) << file;
      EXPECT_FALSE(m.cc_max.has_value()) << file;
    } else {
      ASSERT_TRUE(m.cc_avg.has_value()) << file;
      EXPECT_DOUBLE_EQ(*m.cc_avg, want["cc_avg"].get<double>()) << file;
      EXPECT_EQ(*m.cc_max, want["cc_max"].get<int>()) << file;
    }
  }
}

TEST(MetricsTest, RemovingCommentLineKeepsNloc) {
  ApproxTokenizer tok;
  auto a = ComputeMetrics(MakeSourceUnit("a", "int x;\n/* c */\nint y;\n"), tok);
  auto b = ComputeMetrics(MakeSourceUnit("a", "int x;\nint y;\n"), tok);
  EXPECT_EQ(a.loc, b.loc + 1);
  EXPECT_EQ(a.nloc, b.nloc);
}

TEST(MetricsTest, ApproxTokenizerCounts) {
  ApproxTokenizer tok;
  // int f ( void ) { return 0 ; }
  EXPECT_EQ(tok.Count("int f(void){return 0;}"), 10u);
  // two comment words
  EXPECT_EQ(tok.Count("// hello world\n"), 2u);
}

TEST(MetricsTest, UnbalancedFileHasNoCc) {
  std::vector<std::string> warnings;
  ApproxTokenizer tok;
  auto m = ComputeMetrics(MakeSourceUnit("bad.c", "int f(void){ if (1) {\n"),
                          tok, &warnings);
  EXPECT_FALSE(m.cc_avg.has_value());
  EXPECT_FALSE(warnings.empty());
}

TEST(CorpusTest, LoadOrderAndHeaders) {
  Workdir dir("corpus-test");
  Put(dir.path() / "b.c", "int b;\n");
  Put(dir.path() / "a.c", "int a;\n");
  Put(dir.path() / "a.h", "int a;\n");
  Put(dir.path() / "sub/c.c", "int c;\n");
  CorpusIndex index = LoadCorpus(dir.path());
  ASSERT_EQ(index.units.size(), 3u);
  EXPECT_EQ(index.units[0].id, "a.c");
  EXPECT_EQ(index.units[1].id, "b.c");
  EXPECT_EQ(index.units[2].id, "sub/c.c");
  EXPECT_EQ(index.headers, (std::vector<std::string>{"a.h"}));
}

TEST(CorpusTest, EmptyAndMissingDirectories) {
  Workdir dir("corpus-empty");
  EXPECT_TRUE(LoadCorpus(dir.path()).units.empty());
  EXPECT_THROW(LoadCorpus(dir.path() / "nope"), CorpusError);
}

TEST(CorpusTest, SummaryStatistics) {
  MetricSummary one = Summarize({7});
  EXPECT_EQ(one.min, 7);
  EXPECT_EQ(one.avg, 7);
  EXPECT_EQ(one.max, 7);
  EXPECT_EQ(one.stddev, 0);
  MetricSummary two = Summarize({10, 30});
  EXPECT_EQ(two.avg, 20);
  EXPECT_NEAR(two.stddev, std::sqrt(200.0), 1e-12);
}

TEST(CorpusTest, ReportGroupsAndFilter) {
  auto groups = LoadGroupManifest(kMetricsDir / "groups.txt");
  CorpusIndex index = LoadCorpus(kMetricsDir, groups);
  ASSERT_EQ(index.units.size(), 5u);
  ApproxTokenizer tok;
  CorpusReport all = BuildCorpusReport(index, tok);
  ASSERT_EQ(all.scopes.size(), 4u);
  EXPECT_EQ(all.scopes[0].scope, "all");
  EXPECT_EQ(all.scopes[0].files, 5u);
  // loc values 1, 12, 12, 20, 4
  EXPECT_DOUBLE_EQ(all.scopes[0].loc.avg, 49.0 / 5);
  EXPECT_EQ(all.scopes[0].loc.min, 1);
  EXPECT_EQ(all.scopes[0].loc.max, 20);
  EXPECT_EQ(all.scopes[0].cc.count, 4u);

  CorpusReport internal = BuildCorpusReport(index, tok, "internal");
  ASSERT_EQ(internal.scopes.size(), 1u);
  EXPECT_EQ(internal.scopes[0].files, 2u);
  EXPECT_DOUBLE_EQ(internal.scopes[0].loc.avg, 6.5);

  std::string csv = CorpusReportCsv(internal);
  EXPECT_TRUE(StartsWith(csv, "scope,metric,count,min,avg,stddev,max\n"));
  EXPECT_NE(csv.find("internal,LOC,2,1.0000,6.5000,"), std::string::npos);
  EXPECT_EQ(CorpusReportCsv(BuildCorpusReport(index, tok)), CorpusReportCsv(all));
  EXPECT_EQ(CorpusReportJson(all).dump(), CorpusReportJson(all).dump());
}

}  // namespace
}  // namespace transcheck::corpus
