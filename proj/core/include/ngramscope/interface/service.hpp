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

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ngramscope/analysis.hpp"
#include "ngramscope/error.hpp"
#include "ngramscope/store.hpp"

namespace ngramscope::interface {

/// Set of named corpora. Directories are registered by their manifest
/// summary; the full index loads once, on first use.
class CorpusRegistry {
 public:
  CorpusRegistry();
  ~CorpusRegistry();
  CorpusRegistry(CorpusRegistry&&) noexcept;
  CorpusRegistry& operator=(CorpusRegistry&&) noexcept;

  /// Registers `root` if it holds an index, plus every immediate
  /// subdirectory that does. Throws kLookup when none is found.
  static CorpusRegistry discover(const std::filesystem::path& root);

  void add_directory(const std::filesystem::path& directory);
  void add_index(CorpusIndex index);

  /// Sorted by corpus_id.
  std::vector<IndexSummary> list() const;
  std::size_t size() const;

  /// Throws kLookup for unknown ids; load failures propagate on every call.
  const CorpusIndex& get(std::string_view corpus_id) const;
  const CharModelCache& char_models(std::string_view corpus_id) const;

 private:
  struct Entry;
  Entry& entry(std::string_view corpus_id) const;
  std::map<std::string, std::unique_ptr<Entry>, std::less<>> entries_;
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

/// Request handling for the /api/v1 endpoints, independent of transport.
/// Stateless per request; identical requests produce identical bodies.
class ApiService {
 public:
  explicit ApiService(const CorpusRegistry& registry) : registry_(registry) {}

  ApiResponse handle(std::string_view path, const QueryParams& params) const;

 private:
  const CorpusRegistry& registry_;
};

/// HTTP status and error code used for a failed request.
struct ErrorMapping {
  int status;
  std::string_view code;
};
ErrorMapping map_error(ErrorKind kind) noexcept;

}  // namespace ngramscope::interface
