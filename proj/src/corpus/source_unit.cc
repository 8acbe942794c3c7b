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

#include "transcheck/corpus/source_unit.h"

#include "transcheck/corpus/interface_extractor.h"

namespace transcheck::corpus {

std::vector<const FunctionInterface*> SourceUnit::FuzzTargets() const {
  std::vector<const FunctionInterface*> targets;
  for (const FunctionInterface& iface : interfaces) {
    if (iface.fuzzable() && iface.name != "main") {
      targets.push_back(&iface);
    }
  }
  return targets;
}

SourceUnit MakeSourceUnit(std::string id, std::string text,
                          std::string group) {
  SourceUnit unit;
  unit.id = std::move(id);
  unit.group = std::move(group);
  unit.text = std::move(text);
  unit.interfaces = ExtractInterfaces(unit.text, &unit.warnings);
  return unit;
}

}  // namespace transcheck::corpus
