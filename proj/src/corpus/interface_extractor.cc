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

#include "transcheck/corpus/interface_extractor.h"

#include <map>

#include <fmt/core.h>

namespace transcheck::corpus {

namespace {

void Warn(std::vector<std::string>* warnings, std::string message) {
  if (warnings != nullptr) {
    warnings->push_back(std::move(message));
  }
}

// Globals reachable from `root` through calls to same-file functions.
std::set<std::string> ReachableGlobals(
    const std::string& root,
    const std::map<std::string, std::set<std::string>>& direct_globals,
    const std::map<std::string, std::set<std::string>>& callees) {
  std::set<std::string> seen{root};
  std::vector<std::string> stack{root};
  std::set<std::string> globals;
  while (!stack.empty()) {
    std::string fn = stack.back();
    stack.pop_back();
    if (auto it = direct_globals.find(fn); it != direct_globals.end()) {
      globals.insert(it->second.begin(), it->second.end());
    }
    if (auto it = callees.find(fn); it != callees.end()) {
      for (const std::string& callee : it->second) {
        if (seen.insert(callee).second) {
          stack.push_back(callee);
        }
      }
    }
  }
  return globals;
}

}  // namespace

std::set<std::string> BodyIdentifiers(const ParsedFile& file,
                                      const FunctionDefinition& fn) {
  std::set<std::string> names;
  const auto& tokens = file.tokens;
  for (std::size_t i = fn.body_open + 1; i < fn.body_close; ++i) {
    const Token& t = tokens[i];
    if (t.kind != TokenKind::kIdentifier || t.in_directive) {
      continue;
    }
    std::size_t prev = PrevSignificant(tokens, i);
    if (prev != static_cast<std::size_t>(-1) &&
        (tokens[prev].Is(".") || tokens[prev].Is("->"))) {
      continue;
    }
    names.insert(t.text);
  }
  return names;
}

std::vector<FunctionInterface> ExtractInterfaces(
    std::string_view source, std::vector<std::string>* warnings) {
  return ExtractInterfaces(ParseFile(source), warnings);
}

std::vector<FunctionInterface> ExtractInterfaces(
    const ParsedFile& file, std::vector<std::string>* warnings) {
  for (const std::string& error : file.errors) {
    Warn(warnings, "parse: " + error);
  }

  std::map<std::string, const VariableDecl*> variables;
  for (const VariableDecl& var : file.variables) {
    variables.emplace(var.name, &var);
  }
  std::set<std::string> function_names;
  for (const FunctionDefinition& fn : file.functions) {
    function_names.insert(fn.name);
  }

  std::map<std::string, std::set<std::string>> direct_globals;
  std::map<std::string, std::set<std::string>> callees;
  for (const FunctionDefinition& fn : file.functions) {
    std::set<std::string> params;
    for (const ParamDecl& p : fn.params) {
      params.insert(p.name);
    }
    for (const std::string& name : BodyIdentifiers(file, fn)) {
      if (variables.count(name) && !params.count(name)) {
        direct_globals[fn.name].insert(name);
      }
      if (function_names.count(name) && name != fn.name) {
        callees[fn.name].insert(name);
      }
    }
  }

  std::vector<FunctionInterface> interfaces;
  for (const FunctionDefinition& fn : file.functions) {
    FunctionInterface iface;
    iface.name = fn.name;
    iface.return_type = fn.return_type;
    iface.is_static = fn.is_static;
    iface.includes = file.includes;
    std::set<std::string> seen_params;
    for (const ParamDecl& p : fn.params) {
      if (!seen_params.insert(p.name).second) {
        iface.unsupported_reason =
            fmt::format("duplicate parameter name '{}'", p.name);
      }
      iface.params.push_back({p.name, p.type});
      if (!p.type.supported() && iface.unsupported_reason.empty()) {
        iface.unsupported_reason = fmt::format(
            "parameter '{}' has unsupported type '{}'", p.name,
            p.type.spelling);
      }
    }
    if (fn.variadic && iface.unsupported_reason.empty()) {
      iface.unsupported_reason = "variadic parameter list";
    }
    if (!fn.return_type.supported() && iface.unsupported_reason.empty()) {
      iface.unsupported_reason = fmt::format(
          "unsupported return type '{}'", fn.return_type.spelling);
    }
    if (fn.return_type.shape == TypeShape::kPointer ||
        fn.return_type.shape == TypeShape::kString ||
        fn.return_type.shape == TypeShape::kArray) {
      if (iface.unsupported_reason.empty()) {
        iface.unsupported_reason = "pointer return type";
      }
    }
    for (const std::string& name :
         ReachableGlobals(fn.name, direct_globals, callees)) {
      const VariableDecl* var = variables.at(name);
      if (var->is_const) {
        continue;
      }
      if (var->is_extern) {
        if (iface.unsupported_reason.empty()) {
          iface.unsupported_reason =
              fmt::format("uses external variable '{}'", name);
        }
        continue;
      }
      bool ok = var->type.shape == TypeShape::kScalar ||
                var->type.shape == TypeShape::kArray ||
                (var->type.shape == TypeShape::kString &&
                 var->type.extent > 0);
      if (!ok && iface.unsupported_reason.empty()) {
        iface.unsupported_reason = fmt::format(
            "global '{}' has unsupported type '{}'", name,
            var->type.spelling);
      }
      iface.globals.push_back({name, var->type});
    }
    if (!iface.unsupported_reason.empty()) {
      Warn(warnings, fmt::format("function '{}' is not fuzzable: {}",
                                 fn.name, iface.unsupported_reason));
    }
    interfaces.push_back(std::move(iface));
  }

  for (const MacroDecl& macro : file.macros) {
    if (!macro.function_like) {
      continue;
    }
    FunctionInterface iface;
    iface.name = macro.name;
    iface.macro_like = true;
    iface.return_type = CType::Unsupported("macro");
    iface.includes = file.includes;
    for (const std::string& param : macro.params) {
      iface.params.push_back({param, CType::Unsupported("macro parameter")});
    }
    iface.unsupported_reason = "function-like macro";
    Warn(warnings,
         fmt::format("function-like macro '{}' has no C symbol to fuzz; a "
                     "translation may turn it into a function",
                     macro.name));
    interfaces.push_back(std::move(iface));
  }
  return interfaces;
}

}  // namespace transcheck::corpus
