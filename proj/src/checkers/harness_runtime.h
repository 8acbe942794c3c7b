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

#ifndef TRANSCHECK_SRC_CHECKERS_HARNESS_RUNTIME_H_
#define TRANSCHECK_SRC_CHECKERS_HARNESS_RUNTIME_H_

namespace transcheck::checkers::internal {

// Fixed part of every generated driver. Scalar kind codes follow
// corpus::ScalarKind.
extern const char kDriverRuntime[];

// Conversion traits shared by every Rust shim. Opens `mod tc_ffi_shim`; the
// generator appends the exported functions and the closing brace.
extern const char kRustPrelude[];

}  // namespace transcheck::checkers::internal

#endif  // TRANSCHECK_SRC_CHECKERS_HARNESS_RUNTIME_H_
