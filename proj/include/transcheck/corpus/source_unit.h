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

#ifndef TRANSCHECK_CORPUS_SOURCE_UNIT_H_
#define TRANSCHECK_CORPUS_SOURCE_UNIT_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "transcheck/corpus/c_type.h"

namespace transcheck::corpus {

struct NamedType {
  std::string name;
  CType type;

  bool operator==(const NamedType&) const = default;
};

// What the harness generator needs to know about one C function.
struct FunctionInterface {
  std::string name;
  CType return_type = CType::Void();
  std::vector<NamedType> params;
  // File-scope, non-const variables the function (or a same-file callee)
  // reads or writes.
  std::vector<NamedType> globals;
  bool macro_like = false;
  bool is_static = false;
  std::vector<std::string> includes;
  // Empty when the harness can drive this function.
  std::string unsupported_reason;

  bool fuzzable() const { return !macro_like && unsupported_reason.empty(); }
  bool operator==(const FunctionInterface&) const = default;
};

struct SourceUnit {
  std::string id;     // path relative to the corpus root
  std::string group;  // corpus-group tag
  std::string text;
  std::vector<FunctionInterface> interfaces;
  std::vector<std::string> warnings;
  // Directory holding the file, so quoted includes resolve when the harness
  // recompiles it elsewhere. Empty for in-memory units.
  std::filesystem::path origin_dir;

  // Interfaces the differential fuzzer should exercise.
  std::vector<const FunctionInterface*> FuzzTargets() const;
};

// Builds a unit from text, running interface extraction.
SourceUnit MakeSourceUnit(std::string id, std::string text,
                          std::string group = "default");

}  // namespace transcheck::corpus

#endif  // TRANSCHECK_CORPUS_SOURCE_UNIT_H_
