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

#ifndef TRANSCHECK_CORPUS_C_LEXER_H_
#define TRANSCHECK_CORPUS_C_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace transcheck::corpus {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,
  kChar,
  kPunct,
  kHeaderName,  // <stdio.h> after #include
  kLineComment,
  kBlockComment,
  kWhitespace,
  kNewline,
  kContinuation,  // backslash-newline
  kUnknown,
};

struct Token {
  TokenKind kind = TokenKind::kUnknown;
  std::string text;
  std::size_t offset = 0;
  int line = 1;  // 1-based line of the first character
  bool in_directive = false;

  bool IsComment() const {
    return kind == TokenKind::kLineComment || kind == TokenKind::kBlockComment;
  }
  // Anything the compiler sees: not layout, not comments.
  bool IsSignificant() const {
    return kind != TokenKind::kWhitespace && kind != TokenKind::kNewline &&
           kind != TokenKind::kContinuation && !IsComment();
  }
  bool Is(std::string_view spelling) const {
    return IsSignificant() && text == spelling;
  }
};

// Lossless lexer: concatenating the text of all tokens reproduces the input
// byte for byte. Preprocessor directives are lexed into ordinary tokens with
// in_directive set.
std::vector<Token> Lex(std::string_view source);

std::string Render(const std::vector<Token>& tokens);

bool IsCKeyword(std::string_view word);

}  // namespace transcheck::corpus

#endif  // TRANSCHECK_CORPUS_C_LEXER_H_
