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

#ifndef TRANSCHECK_SUPPORT_TEXT_H_
#define TRANSCHECK_SUPPORT_TEXT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace transcheck {

std::string_view Trim(std::string_view text);
std::string_view TrimRight(std::string_view text);
std::vector<std::string> Split(std::string_view text, char separator);
std::vector<std::string> SplitLines(std::string_view text);
bool StartsWith(std::string_view text, std::string_view prefix);
bool EndsWith(std::string_view text, std::string_view suffix);
std::string ToLower(std::string_view text);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Reads a whole file; nullopt if it cannot be opened.
std::optional<std::string> ReadFile(const std::filesystem::path& path);

// Writes via a temporary sibling and rename, so readers never see a partial
// file. Throws std::runtime_error on failure.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

// Parses `key = value` lines. Blank lines and lines starting with '#' or ';'
// are ignored. Later keys overwrite earlier ones.
std::map<std::string, std::string> ParseKeyValueText(std::string_view text);

// Stable 64-bit FNV-1a. Used wherever a hash must not change between builds,
// platforms or standard library implementations.
std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t HashCombine(std::uint64_t seed, std::string_view part);
std::string ToHex(std::uint64_t value);

}  // namespace transcheck

#endif  // TRANSCHECK_SUPPORT_TEXT_H_
