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

#ifndef TRANSCHECK_CHECKERS_HARNESS_GENERATOR_H_
#define TRANSCHECK_CHECKERS_HARNESS_GENERATOR_H_

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "transcheck/checkers/config.h"
#include "transcheck/checkers/type_mapping.h"
#include "transcheck/corpus/source_unit.h"

namespace transcheck::checkers {

class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Where one reference function lives in a differently spelled C source
// (e.g. a perturbed copy with renamed identifiers or reordered parameters).
struct SideBinding {
  std::string function;
  // The side's parameter i receives the reference parameter param_order[i].
  std::vector<std::size_t> param_order;
  // Reference global name -> name in the side's source. Missing entries keep
  // the reference name.
  std::map<std::string, std::string> globals;
};

SideBinding IdentityBinding(const corpus::FunctionInterface& iface);

// C translation unit that includes `source_path` with every function and
// global it defines renamed under `prefix` ("tc_a_" or "tc_b_"), and exports
//   <prefix>call_<f>(...)   for each target, parameters in reference order
//   <prefix>set_<g>/get_<g> for each global the targets touch.
// `text` is the source at `source_path`, used to find the definitions.
// With `as_side_b` the wrappers take a trailing status pointer and the
// runtime hooks a Rust side would provide are stubbed.
std::string GenerateCSide(
    std::string_view text, const std::string& source_path,
    std::string_view prefix,
    const std::vector<const corpus::FunctionInterface*>& targets,
    const std::map<std::string, SideBinding>& bindings, bool as_side_b);

// Module appended to the Rust translation. It exports tc_b_call_<f>,
// tc_b_set_<g>/tc_b_get_<g>, tc_b_init and tc_b_last_panic with unmangled
// names and converts every value explicitly. Throws HarnessError when a
// global cannot be located in `rust_source`.
std::string GenerateRustShim(
    const std::vector<const corpus::FunctionInterface*>& targets,
    std::string_view rust_source);

// libFuzzer driver for one function: decodes the input, runs side A then
// side B under signal and CPU-time guards, compares, and on a counterexample
// writes a JSON report to $TC_REPORT and aborts.
std::string GenerateDriver(const corpus::FunctionInterface& iface,
                           const InputLayout& layout, const FuzzConfig& config);

struct GeneratedHarness {
  InputLayout layout;
  std::string c_harness;  // driver source
  std::string rust_shim;
};

// Throws HarnessError for non-fuzzable interfaces.
GeneratedHarness GenerateHarness(const corpus::FunctionInterface& iface,
                                 const FuzzConfig& config,
                                 std::string_view rust_source = {});

// "calcSum" -> "calc_sum", "HTTPServer" -> "http_server".
std::string ToSnakeCase(std::string_view name);

}  // namespace transcheck::checkers

#endif  // TRANSCHECK_CHECKERS_HARNESS_GENERATOR_H_
