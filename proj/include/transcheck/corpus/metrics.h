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

#ifndef TRANSCHECK_CORPUS_METRICS_H_
#define TRANSCHECK_CORPUS_METRICS_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transcheck/corpus/c_lexer.h"
#include "transcheck/corpus/source_unit.h"

namespace transcheck::corpus {

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::size_t Count(std::string_view text) const = 0;
  virtual std::string Name() const = 0;
};

// Deterministic, offline token count. Every significant C token (identifier,
// keyword, number, literal, punctuator, header name) counts as one token, and
// comment text (without its delimiters) counts one token per word and per
// punctuation character.
// Subword splitting is not modelled, so counts are lower than a BPE model's.
class ApproxTokenizer : public Tokenizer {
 public:
  std::size_t Count(std::string_view text) const override;
  std::string Name() const override { return "approx-c-tokens"; }
};

// Delegates to an external program that reads text on stdin and prints the
// token count (e.g. a tiktoken wrapper script).
class CommandTokenizer : public Tokenizer {
 public:
  explicit CommandTokenizer(std::vector<std::string> argv);
  std::size_t Count(std::string_view text) const override;
  std::string Name() const override;

 private:
  std::vector<std::string> argv_;
};

struct CodeMetrics {
  std::size_t loc = 0;
  std::size_t nloc = 0;
  std::size_t tokens = 0;
  std::size_t functions = 0;
  // Absent when the file has no function definitions or does not parse.
  std::optional<double> cc_avg;
  std::optional<int> cc_max;
};

// Decision points + 1 over the token range [begin, end). Counted decision
// points: if, for, while, case, &&, ||, ?.
int CyclomaticComplexity(const std::vector<Token>& tokens, std::size_t begin,
                         std::size_t end);

std::size_t CountLines(std::string_view text);
std::size_t CountCodeLines(const std::vector<Token>& tokens);

CodeMetrics ComputeMetrics(const SourceUnit& unit, const Tokenizer& tokenizer,
                           std::vector<std::string>* warnings = nullptr);

}  // namespace transcheck::corpus

#endif  // TRANSCHECK_CORPUS_METRICS_H_
