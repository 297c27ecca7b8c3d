// Copyright 2026 The ngramscope Authors.
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

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ngramscope/analysis.hpp"
#include "ngramscope/query.hpp"
#include "ngramscope/store.hpp"

namespace ngramscope::interface {

using json = nlohmann::json;

// JSON field names below are part of the published /api/v1 contract.

json series_response(const std::string& corpus_id, const PhraseQuery& query,
                     const std::vector<FrequencySeries>& series);
json to_json(const CompletionDistribution& dist);
json to_json(const AnomalyReport& report);
json to_json(const DocumentMeta& doc);
json to_json(const IndexSummary& summary);
json to_json(const Spike& spike);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double value);

/// `year,<phrase1>,<phrase2>,...` header then one row per year.
std::string render_csv(const std::vector<FrequencySeries>& series);

struct ChartOptions {
  int width = 72;
  int height = 16;
};

/// Fixed-width ASCII line chart, one glyph per series, with a legend.
std::string render_chart(const std::vector<FrequencySeries>& series, ChartOptions options = {});

}  // namespace ngramscope::interface
