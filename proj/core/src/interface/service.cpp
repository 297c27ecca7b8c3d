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

#include "ngramscope/interface/service.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <optional>
#include <tuple>

#include "ngramscope/error.hpp"
#include "ngramscope/interface/codec.hpp"

namespace ngramscope::interface {

namespace fs = std::filesystem;

struct CorpusRegistry::Entry {
  fs::path directory;
  IndexSummary summary;
  std::once_flag once;
  std::unique_ptr<CorpusIndex> index;
  std::unique_ptr<CharModelCache> chars;
  std::exception_ptr failure;

  const CorpusIndex& load() {
    std::call_once(once, [this] {
      try {
        if (!index) index = std::make_unique<CorpusIndex>(load_index(directory));
        index->warm_case_folding();
        chars = std::make_unique<CharModelCache>(*index);
      } catch (...) {
        failure = std::current_exception();
      }
    });
    if (failure) std::rethrow_exception(failure);
    return *index;
  }
};

CorpusRegistry::CorpusRegistry() = default;
CorpusRegistry::~CorpusRegistry() = default;
CorpusRegistry::CorpusRegistry(CorpusRegistry&&) noexcept = default;
CorpusRegistry& CorpusRegistry::operator=(CorpusRegistry&&) noexcept = default;

CorpusRegistry CorpusRegistry::discover(const fs::path& root) {
  CorpusRegistry registry;
  if (fs::exists(root / kManifestFile)) registry.add_directory(root);
  std::error_code ec;
  if (fs::is_directory(root, ec)) {
    std::vector<fs::path> children;
    for (const auto& item : fs::directory_iterator(root, ec)) {
      if (item.is_directory() && fs::exists(item.path() / kManifestFile)) children.push_back(item.path());
    }
    std::sort(children.begin(), children.end());
    for (const auto& child : children) registry.add_directory(child);
  }
  if (registry.size() == 0) {
    throw Error(ErrorKind::kLookup, "no corpus index found under " + root.string());
  }
  return registry;
}

void CorpusRegistry::add_directory(const fs::path& directory) {
  auto entry = std::make_unique<Entry>();
  entry->directory = directory;
  entry->summary = read_index_summary(directory);
  const auto id = entry->summary.corpus_id;
  if (!entries_.emplace(id, std::move(entry)).second) {
    throw Error(ErrorKind::kLookup, "corpus id \"" + id + "\" registered twice");
  }
}

void CorpusRegistry::add_index(CorpusIndex index) {
  auto entry = std::make_unique<Entry>();
  entry->summary = IndexSummary{index.corpus_id(), index.max_order(), index.year_span(),
                                index.documents().size(), index.has_postings()};
  entry->index = std::make_unique<CorpusIndex>(std::move(index));
  entry->index->warm_case_folding();
  const auto id = entry->summary.corpus_id;
  if (!entries_.emplace(id, std::move(entry)).second) {
    throw Error(ErrorKind::kLookup, "corpus id \"" + id + "\" registered twice");
  }
}

std::vector<IndexSummary> CorpusRegistry::list() const {
  std::vector<IndexSummary> out;
  for (const auto& [id, entry] : entries_) out.push_back(entry->summary);
  return out;
}

std::size_t CorpusRegistry::size() const { return entries_.size(); }

CorpusRegistry::Entry& CorpusRegistry::entry(std::string_view corpus_id) const {
  auto it = entries_.find(corpus_id);
  if (it == entries_.end()) {
    throw Error(ErrorKind::kLookup, "unknown corpus \"" + std::string(corpus_id) + "\"");
  }
  return *it->second;
}

const CorpusIndex& CorpusRegistry::get(std::string_view corpus_id) const {
  return entry(corpus_id).load();
}

const CharModelCache& CorpusRegistry::char_models(std::string_view corpus_id) const {
  auto& e = entry(corpus_id);
  e.load();
  return *e.chars;
}

// --- request handling -------------------------------------------------------

ErrorMapping map_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParameter: return {400, "invalid_parameter"};
    case ErrorKind::kParse: return {400, "invalid_query"};
    case ErrorKind::kLookup: return {404, "not_found"};
    case ErrorKind::kCapability: return {409, "capability_unavailable"};
    default: return {500, "corpus_unavailable"};
  }
}

namespace {

class Params {
 public:
  explicit Params(const QueryParams& params) : params_(params) {}

  std::optional<std::string> get(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) return std::nullopt;
    return it->second;
  }

  std::string require(const std::string& key) const {
    auto value = get(key);
    if (!value || value->empty()) {
      throw Error(ErrorKind::kParameter, "missing parameter \"" + key + "\"");
    }
    return *value;
  }

  template <typename Int>
  std::optional<Int> integer(const std::string& key) const {
    auto value = get(key);
    if (!value || value->empty()) return std::nullopt;
    Int out{};
    const char* end = value->data() + value->size();
    auto [ptr, ec] = std::from_chars(value->data(), end, out);
    if (ec != std::errc{} || ptr != end) {
      throw Error(ErrorKind::kParameter, "parameter \"" + key + "\" must be an integer");
    }
    return out;
  }

 private:
  const QueryParams& params_;
};

std::string resolve_corpus(const CorpusRegistry& registry, const Params& params) {
  if (auto id = params.get("corpus"); id && !id->empty()) return *id;
  if (registry.size() == 1) return registry.list().front().corpus_id;
  throw Error(ErrorKind::kParameter, "missing parameter \"corpus\"");
}

bool parse_case(const std::string& value) {
  if (value == "insensitive" || value == "true" || value == "1" || value == "ci") return true;
  if (value == "sensitive" || value == "false" || value == "0" || value.empty()) return false;
  throw Error(ErrorKind::kParameter, "case must be \"sensitive\" or \"insensitive\"");
}

std::pair<int, int> year_range(const CorpusIndex& index, const Params& params) {
  const auto span = index.year_span();
  auto start = params.integer<int>("start");
  auto end = params.integer<int>("end");
  if ((!start || !end) && !span) {
    throw Error(ErrorKind::kParameter, "corpus has no dated data; give start and end");
  }
  return {start.value_or(span ? span->min_year : 0), end.value_or(span ? span->max_year : 0)};
}

json handle_series(const CorpusRegistry& registry, const Params& params) {
  const auto corpus = resolve_corpus(registry, params);
  const auto& index = registry.get(corpus);
  PhraseQuery query = parse_query(params.require("phrases"), index.max_order());
  std::tie(query.start_year, query.end_year) = year_range(index, params);
  query.smoothing = params.integer<int>("smoothing").value_or(kDefaultSmoothing);
  query.case_insensitive = parse_case(params.get("case").value_or(""));
  query.normalization = parse_normalization(params.get("normalize").value_or("tokens"));
  const auto result = series(index, query);
  return series_response(index.corpus_id(), query, result);
}

json handle_completions(const CorpusRegistry& registry, const Params& params) {
  const auto corpus = resolve_corpus(registry, params);
  const auto& index = registry.get(corpus);
  const auto unit = parse_completion_unit(params.get("unit").value_or("word"));
  const auto top = params.integer<long long>("top").value_or(10);
  if (top < 0) throw Error(ErrorKind::kParameter, "top must be >= 0");
  const auto history = params.get("history").value_or("");
  return to_json(complete(index, history, unit, static_cast<std::size_t>(top),
                          unit == CompletionUnit::kChar ? &registry.char_models(corpus) : nullptr));
}

json handle_anomalies(const CorpusRegistry& registry, const Params& params) {
  const auto& index = registry.get(resolve_corpus(registry, params));
  const auto reports = find_misdated(index, params.require("phrase"),
                                     params.integer<int>("window").value_or(kDefaultIsolationWindow),
                                     params.integer<int>("gap").value_or(kDefaultMinGap));
  json out = json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

json handle_documents(const CorpusRegistry& registry, const Params& params) {
  const auto& index = registry.get(resolve_corpus(registry, params));
  if (!index.has_postings()) {
    throw Error(ErrorKind::kCapability, "postings not available for corpus " + index.corpus_id());
  }
  const auto phrase = params.require("phrase");
  const auto [start, end] = year_range(index, params);
  json out = json::array();
  for (const auto& doc : documents(index, phrase, start, end)) out.push_back(to_json(doc));
  return out;
}

json handle_corpora(const CorpusRegistry& registry) {
  json out = json::array();
  for (const auto& summary : registry.list()) out.push_back(to_json(summary));
  return out;
}

ApiResponse error_response(int status, std::string_view code, const std::string& message) {
  json body = {{"error", {{"code", code}, {"message", message}}}};
  return {status, body.dump()};
}

}  // namespace

ApiResponse ApiService::handle(std::string_view path, const QueryParams& query) const {
  const Params params(query);
  try {
    json body;
    if (path == "/api/v1/corpora") {
      body = handle_corpora(registry_);
    } else if (path == "/api/v1/series") {
      body = handle_series(registry_, params);
    } else if (path == "/api/v1/completions") {
      body = handle_completions(registry_, params);
    } else if (path == "/api/v1/anomalies") {
      body = handle_anomalies(registry_, params);
    } else if (path == "/api/v1/documents") {
      body = handle_documents(registry_, params);
    } else {
      return error_response(404, "not_found", "no endpoint " + std::string(path));
    }
    return {200, body.dump()};
  } catch (const Error& e) {
    const auto mapping = map_error(e.kind());
    return error_response(mapping.status, mapping.code, e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

}  // namespace ngramscope::interface
