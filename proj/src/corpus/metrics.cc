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

#include "transcheck/corpus/metrics.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <stdexcept>

#include "transcheck/corpus/c_parser.h"
#include "transcheck/support/subprocess.h"
#include "transcheck/support/text.h"

namespace transcheck::corpus {

namespace {

std::size_t CountCommentTokens(std::string_view comment) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < comment.size()) {
    unsigned char c = static_cast<unsigned char>(comment[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isalnum(c) || c == '_') {
      while (i < comment.size() &&
             (std::isalnum(static_cast<unsigned char>(comment[i])) ||
              comment[i] == '_')) {
        ++i;
      }
      ++count;
    } else {
      ++i;
      ++count;
    }
  }
  return count;
}

}  // namespace

std::size_t ApproxTokenizer::Count(std::string_view text) const {
  std::size_t count = 0;
  for (const Token& token : Lex(text)) {
    if (token.kind == TokenKind::kLineComment) {
      count += CountCommentTokens(std::string_view(token.text).substr(2));
    } else if (token.kind == TokenKind::kBlockComment) {
      std::string_view body = std::string_view(token.text).substr(2);
      if (EndsWith(body, "*/")) {
        body.remove_suffix(2);
      }
      count += CountCommentTokens(body);
    } else if (token.IsSignificant()) {
      ++count;
    }
  }
  return count;
}

CommandTokenizer::CommandTokenizer(std::vector<std::string> argv)
    : argv_(std::move(argv)) {
  if (argv_.empty()) {
    throw std::invalid_argument("tokenizer command is empty");
  }
}

std::size_t CommandTokenizer::Count(std::string_view text) const {
  ProcessRequest request;
  request.argv = argv_;
  request.stdin_data = std::string(text);
  request.timeout = std::chrono::seconds(60);
  ProcessResult result = RunProcess(request);
  if (!result.ok()) {
    throw std::runtime_error("tokenizer command failed: " + result.err +
                             result.launch_error);
  }
  std::string_view out = Trim(result.out);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(out.data(), out.data() + out.size(), value);
  if (ec != std::errc()) {
    throw std::runtime_error("tokenizer printed a non-number: " +
                             std::string(out));
  }
  return value;
}

std::string CommandTokenizer::Name() const { return Join(argv_, " "); }

int CyclomaticComplexity(const std::vector<Token>& tokens, std::size_t begin,
                         std::size_t end) {
  int decisions = 0;
  for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!t.IsSignificant() || t.in_directive) {
      continue;
    }
    if (t.kind == TokenKind::kKeyword &&
        (t.text == "if" || t.text == "for" || t.text == "while" ||
         t.text == "case")) {
      ++decisions;
    } else if (t.kind == TokenKind::kPunct &&
               (t.text == "&&" || t.text == "||" || t.text == "?")) {
      ++decisions;
    }
  }
  return decisions + 1;
}

std::size_t CountLines(std::string_view text) {
  if (text.empty()) {
    return 0;
  }
  std::size_t lines = static_cast<std::size_t>(
      std::count(text.begin(), text.end(), '\n'));
  if (text.back() != '\n') {
    ++lines;
  }
  return lines;
}

std::size_t CountCodeLines(const std::vector<Token>& tokens) {
  std::set<int> lines;
  for (const Token& t : tokens) {
    if (t.IsSignificant()) {
      lines.insert(t.line);
    }
  }
  return lines.size();
}

CodeMetrics ComputeMetrics(const SourceUnit& unit, const Tokenizer& tokenizer,
                           std::vector<std::string>* warnings) {
  CodeMetrics metrics;
  ParsedFile parsed = ParseFile(unit.text);
  metrics.loc = CountLines(unit.text);
  metrics.nloc = CountCodeLines(parsed.tokens);
  metrics.tokens = tokenizer.Count(unit.text);
  metrics.functions = parsed.functions.size();
  if (!parsed.errors.empty()) {
    if (warnings != nullptr) {
      warnings->push_back(unit.id + ": cyclomatic complexity unavailable (" +
                          parsed.errors.front() + ")");
    }
    return metrics;
  }
  if (parsed.functions.empty()) {
    return metrics;
  }
  int total = 0;
  int max = 0;
  for (const FunctionDefinition& fn : parsed.functions) {
    int cc = CyclomaticComplexity(parsed.tokens, fn.body_open, fn.body_close);
    total += cc;
    max = std::max(max, cc);
  }
  metrics.cc_avg =
      static_cast<double>(total) / static_cast<double>(parsed.functions.size());
  metrics.cc_max = max;
  return metrics;
}

}  // namespace transcheck::corpus
