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

#ifndef TRANSCHECK_CORPUS_CORPUS_H_
#define TRANSCHECK_CORPUS_CORPUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "transcheck/corpus/metrics.h"
#include "transcheck/corpus/source_unit.h"

namespace transcheck::corpus {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusIndex {
  std::filesystem::path root;
  std::vector<SourceUnit> units;     // sorted by id
  std::vector<std::string> headers;  // context only, sorted
  std::vector<std::string> warnings;

  const SourceUnit* Find(const std::string& id) const;
};

using GroupMap = std::map<std::string, std::string>;

// Reads `id = group` lines.
GroupMap LoadGroupManifest(const std::filesystem::path& path);

// Walks `dir` recursively. Throws CorpusError when the directory itself is
// missing or unreadable; individual unreadable files become warnings.
CorpusIndex LoadCorpus(const std::filesystem::path& dir,
                       const std::optional<GroupMap>& groups = std::nullopt);

struct MetricSummary {
  std::size_t count = 0;
  double min = 0;
  double avg = 0;
  double stddev = 0;  // sample standard deviation (n - 1); 0 for n < 2
  double max = 0;
};

MetricSummary Summarize(const std::vector<double>& values);

struct FileMetricsRow {
  std::string id;
  std::string group;
  CodeMetrics metrics;
};

struct ScopeSummary {
  std::string scope;  // "all" or a group tag
  std::size_t files = 0;
  MetricSummary loc;
  MetricSummary nloc;
  MetricSummary tokens;
  MetricSummary cc;  // over files that have at least one function
};

struct CorpusReport {
  std::string tokenizer;
  std::vector<FileMetricsRow> files;
  std::vector<ScopeSummary> scopes;
  std::vector<std::string> warnings;
};

// With a group filter only that group's files are aggregated and a single
// scope named after the group is reported. Without one, the report has an
// "all" scope followed by one scope per group.
CorpusReport BuildCorpusReport(const CorpusIndex& index,
                               const Tokenizer& tokenizer,
                               const std::optional<std::string>& group =
                                   std::nullopt);

// scope,metric,count,min,avg,stddev,max
std::string CorpusReportCsv(const CorpusReport& report);
std::string CorpusFilesCsv(const CorpusReport& report);
nlohmann::ordered_json CorpusReportJson(const CorpusReport& report);

}  // namespace transcheck::corpus

#endif  // TRANSCHECK_CORPUS_CORPUS_H_
