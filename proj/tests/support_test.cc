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

#include <filesystem>

#include <gtest/gtest.h>

#include "transcheck/support/error_category.h"
#include "transcheck/support/subprocess.h"
#include "transcheck/support/text.h"
#include "transcheck/support/workdir.h"

namespace transcheck {
namespace {

TEST(TextTest, SplitAndTrim) {
  EXPECT_EQ(Trim("  a b \n"), "a b");
  EXPECT_EQ(Split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(SplitLines("x\ny\n"), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(Join({"a", "b"}, "-"), "a-b");
}

TEST(TextTest, KeyValueParsingIgnoresComments) {
  auto kv = ParseKeyValueText("# c\n a = 1 \n; other\nb=x=y\n\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv["a"], "1");
  EXPECT_EQ(kv["b"], "x=y");
}

TEST(TextTest, HashCombineSeparatesParts) {
  EXPECT_NE(HashCombine(HashCombine(1, "ab"), "c"),
            HashCombine(HashCombine(1, "a"), "bc"));
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ull);
  // Published FNV-1a test vector.
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(ToHex(255), "00000000000000ff");
}

TEST(TextTest, AtomicWriteRoundTrip) {
  Workdir dir("text-test");
  auto path = dir.path() / "f.txt";
  WriteFileAtomic(path, "hello");
  EXPECT_EQ(ReadFile(path).value(), "hello");
  EXPECT_FALSE(ReadFile(dir.path() / "missing").has_value());
}

TEST(WorkdirTest, RemovedUnlessRetained) {
  std::filesystem::path kept;
  std::filesystem::path dropped;
  {
    Workdir a("wd");
    Workdir b("wd");
    b.Retain();
    dropped = a.path();
    kept = b.path();
    EXPECT_NE(a.path(), b.path());
  }
  EXPECT_FALSE(std::filesystem::exists(dropped));
  EXPECT_TRUE(std::filesystem::exists(kept));
  std::filesystem::remove_all(kept);
}

TEST(SubprocessTest, CapturesOutputAndStdin) {
  ProcessRequest req;
  req.argv = {"/bin/sh", "-c", "cat; echo err >&2; exit 3"};
  req.stdin_data = "in";
  ProcessResult r = RunProcess(req);
  ASSERT_TRUE(r.launched);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(r.out, "in");
  EXPECT_EQ(r.err, "err\n");
}

TEST(SubprocessTest, TimeoutAndMissingProgram) {
  ProcessRequest req;
  req.argv = {"/bin/sh", "-c", "sleep 5"};
  req.timeout = std::chrono::milliseconds(200);
  EXPECT_TRUE(RunProcess(req).timed_out);
  req.argv = {"/nonexistent/tool"};
  EXPECT_FALSE(RunProcess(req).launched);
}

TEST(ErrorCategoryTest, RoundTrip) {
  for (ErrorCategory c : kAllErrorCategories) {
    EXPECT_EQ(ParseErrorCategory(ToString(c)), c);
  }
  EXPECT_FALSE(ParseErrorCategory("Nope").has_value());
}

}  // namespace
}  // namespace transcheck
