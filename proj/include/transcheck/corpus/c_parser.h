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

#ifndef TRANSCHECK_CORPUS_C_PARSER_H_
#define TRANSCHECK_CORPUS_C_PARSER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transcheck/corpus/c_lexer.h"
#include "transcheck/corpus/c_type.h"

namespace transcheck::corpus {

// A lightweight declaration-level view of one C file. Only file-scope
// structure is recovered: function definitions, variables, typedefs, macros
// and includes. Token indices refer to ParsedFile::tokens.

struct ParamDecl {
  std::string name;  // synthesized as argN when the declarator is abstract
  CType type;
  std::size_t begin = 0;  // token range of the whole parameter
  std::size_t end = 0;
  std::optional<std::size_t> name_token;
};

struct FunctionDefinition {
  std::string name;
  CType return_type;
  std::vector<ParamDecl> params;
  bool is_static = false;
  bool variadic = false;
  std::size_t header_begin = 0;  // first token of the declaration specifiers
  std::size_t name_token = 0;
  std::size_t params_open = 0;   // '('
  std::size_t params_close = 0;  // ')'
  std::size_t body_open = 0;     // '{'
  std::size_t body_close = 0;    // '}'
};

struct FunctionPrototype {
  std::string name;
  std::size_t name_token = 0;
  std::size_t params_open = 0;
  std::size_t params_close = 0;
  std::vector<ParamDecl> params;
};

struct VariableDecl {
  std::string name;
  CType type;
  bool is_const = false;  // the object itself is const
  bool is_static = false;
  bool is_extern = false;
  std::size_t name_token = 0;
};

struct MacroDecl {
  std::string name;
  bool function_like = false;
  std::vector<std::string> params;
  std::string body;
  std::size_t name_token = 0;
};

struct ParsedFile {
  std::vector<Token> tokens;
  std::vector<FunctionDefinition> functions;
  std::vector<FunctionPrototype> prototypes;
  std::vector<VariableDecl> variables;
  std::map<std::string, CType> typedefs;
  std::vector<MacroDecl> macros;
  std::vector<std::string> includes;  // as written, e.g. "<stdio.h>"
  std::vector<std::string> errors;    // structural problems (unbalanced...)

  const FunctionDefinition* FindFunction(std::string_view name) const;
  const VariableDecl* FindVariable(std::string_view name) const;
};

ParsedFile ParseFile(std::string_view source);

// Index of the next significant token at or after `from` (tokens.size() if
// none). Directive tokens are skipped unless `include_directives`.
std::size_t NextSignificant(const std::vector<Token>& tokens, std::size_t from,
                            bool include_directives = false);
// Index of the previous significant token strictly before `from`, or npos.
std::size_t PrevSignificant(const std::vector<Token>& tokens, std::size_t from,
                            bool include_directives = false);
// Matching closer for the bracket at `open` ('(', '[' or '{'); npos if
// unbalanced. Directive tokens are ignored.
std::size_t MatchBracket(const std::vector<Token>& tokens, std::size_t open);

}  // namespace transcheck::corpus

#endif  // TRANSCHECK_CORPUS_C_PARSER_H_
