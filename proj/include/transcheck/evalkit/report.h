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

#ifndef TRANSCHECK_EVALKIT_REPORT_H_
#define TRANSCHECK_EVALKIT_REPORT_H_

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "transcheck/evalkit/metrics.h"

namespace transcheck::evalkit {

// Check,<=1,<=2,...  One row per stage. Cells without any usable file
// read "NA".
std::string PassTableCsv(const PassTable& table);
nlohmann::ordered_json PassTableJson(const PassTable& table);

struct AggregateRow {
  std::string model;
  std::string set_label;
  double robust = 0;
  double mean = 0;
  double augmented = 0;
};

std::string AggregatesCsv(const std::vector<AggregateRow>& rows);

std::string SolvedSetsCsv(const SolvedSets& sets);
nlohmann::ordered_json SolvedSetsJson(const SolvedSets& sets);

std::string FailureHistogramCsv(const FailureHistogram& h);
std::string ErrorDistributionCsv(const std::vector<ErrorRates>& rates);
std::string TokenCurveCsv(const TokenCurve& curve);

// Plot data: {"series": [{"label": ..., "points": [{"x": .., "y": ..}]}]}
// or, for histograms, {"label": ..., "bins": [{"lo", "hi", "count"}]}.
struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::optional<Histogram> histogram;
};

nlohmann::ordered_json PlotJson(const std::vector<PlotSeries>& series);
std::vector<PlotSeries> TokenCurveSeries(const TokenCurve& curve);
std::vector<PlotSeries> FailureHistogramSeries(const FailureHistogram& h);
std::vector<PlotSeries> SampledAggregateSeries(
    const std::vector<SampledAggregate>& samples, std::size_t bins = 20);

// Writes `content` to dir/name atomically. Throws std::runtime_error when the
// path is not writable.
void WriteReport(const std::filesystem::path& dir, const std::string& name,
                 const std::string& content);

}  // namespace transcheck::evalkit

#endif  // TRANSCHECK_EVALKIT_REPORT_H_
