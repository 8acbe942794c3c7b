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

#ifndef TRANSCHECK_CORPUS_INTERFACE_EXTRACTOR_H_
#define TRANSCHECK_CORPUS_INTERFACE_EXTRACTOR_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "transcheck/corpus/c_parser.h"
#include "transcheck/corpus/source_unit.h"

namespace transcheck::corpus {

// One interface per function definition and per function-like macro, in
// source order. Problems (unsupported types, parse errors) are appended to
// `warnings`; the affected interfaces are marked non-fuzzable.
std::vector<FunctionInterface> ExtractInterfaces(
    std::string_view source, std::vector<std::string>* warnings = nullptr);

std::vector<FunctionInterface> ExtractInterfaces(
    const ParsedFile& file, std::vector<std::string>* warnings = nullptr);

// Identifiers referenced inside the body of `fn` (member names after '.' and
// '->' excluded).
std::set<std::string> BodyIdentifiers(const ParsedFile& file,
                                      const FunctionDefinition& fn);

}  // namespace transcheck::corpus

#endif  // TRANSCHECK_CORPUS_INTERFACE_EXTRACTOR_H_
