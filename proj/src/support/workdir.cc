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

#include "transcheck/support/workdir.h"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <system_error>

#include <fmt/core.h>

namespace transcheck {

Workdir::Workdir(std::string_view tag, const std::filesystem::path& parent) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path base =
      parent.empty() ? std::filesystem::temp_directory_path() : parent;
  auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  path_ = base / fmt::format("tc-{}-{}-{}-{:x}", tag, ::getpid(), counter++,
                             static_cast<unsigned long long>(stamp) & 0xffffff);
  std::filesystem::create_directories(path_);
}

Workdir::~Workdir() {
  if (!retain_) {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
}

}  // namespace transcheck
