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

#ifndef TRANSCHECK_SUPPORT_WORKDIR_H_
#define TRANSCHECK_SUPPORT_WORKDIR_H_

#include <filesystem>
#include <string_view>

namespace transcheck {

// A uniquely named scratch directory. Removed on destruction unless Retain()
// was called.
class Workdir {
 public:
  explicit Workdir(std::string_view tag,
                   const std::filesystem::path& parent = {});
  ~Workdir();

  Workdir(const Workdir&) = delete;
  Workdir& operator=(const Workdir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  void Retain() { retain_ = true; }
  bool retained() const { return retain_; }

 private:
  std::filesystem::path path_;
  bool retain_ = false;
};

}  // namespace transcheck

#endif  // TRANSCHECK_SUPPORT_WORKDIR_H_
