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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ngramscope/store.hpp"

namespace ngramscope::testing {

class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ngramscope-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct TextCorpus {
  std::vector<DocumentMeta> docs;
  std::vector<std::string> texts;
};

/// Random corpus of space-separated words from a small vocabulary, so n-grams
/// repeat. Texts contain only ASCII letters and single spaces, which lets a
/// plain split on ' ' serve as the tokenization oracle.
inline TextCorpus random_corpus(std::mt19937_64& rng, std::size_t max_docs = 50,
                                std::size_t max_tokens = 200) {
  static const std::vector<std::string> kVocab = {
      "the", "cat", "sat", "on", "mat", "a", "dog", "ran", "The", "CAT", "Cat", "of",
      "smectic", "Frankenstein", "vampire", "graphene", "silicon", "and"};
  std::uniform_int_distribution<std::size_t> doc_count(0, max_docs);
  std::uniform_int_distribution<std::size_t> token_count(0, max_tokens);
  std::uniform_int_distribution<std::size_t> word(0, kVocab.size() - 1);
  std::uniform_int_distribution<int> year(1800, 1812);

  TextCorpus corpus;
  const std::size_t n = doc_count(rng);
  for (std::size_t d = 0; d < n; ++d) {
    DocumentMeta meta;
    meta.doc_id = "doc" + std::to_string(d);
    meta.title = "Title " + std::to_string(d);
    meta.year = year(rng);
    std::string text;
    const std::size_t t = token_count(rng);
    for (std::size_t i = 0; i < t; ++i) {
      if (i) text.push_back(' ');
      text += kVocab[word(rng)];
    }
    corpus.docs.push_back(meta);
    corpus.texts.push_back(std::move(text));
  }
  return corpus;
}

inline std::vector<std::string> split_spaces(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

/// (ngram text, year) -> count, by explicit nested loops over every window.
using BruteCounts = std::map<std::pair<std::string, int>, YearlyCount>;

inline BruteCounts brute_force_counts(const TextCorpus& corpus, int max_order) {
  BruteCounts counts;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto words = split_spaces(corpus.texts[d]);
    std::map<std::string, std::uint64_t> local;
    for (int n = 1; n <= max_order; ++n) {
      for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= words.size(); ++i) {
        std::string g;
        for (int k = 0; k < n; ++k) {
          if (k) g += ' ';
          g += words[i + static_cast<std::size_t>(k)];
        }
        local[g] += 1;
      }
    }
    for (const auto& [g, c] : local) {
      auto& cell = counts[{g, corpus.docs[d].year}];
      cell.match_count += c;
      cell.volume_count += 1;
    }
  }
  return counts;
}

/// Corpus on disk with a JSON Lines manifest.
struct DiskCorpus {
  std::filesystem::path manifest;
  std::vector<DocumentMeta> docs;
  std::vector<std::string> texts;
};

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline DiskCorpus write_corpus(const TempDir& dir, const std::vector<DocumentMeta>& docs,
                               const std::vector<std::string>& texts,
                               const std::string& manifest_name = "manifest.jsonl") {
  DiskCorpus out;
  out.manifest = dir / manifest_name;
  std::filesystem::create_directories(dir / "texts");
  std::ofstream manifest(out.manifest);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto file = dir / ("texts/" + docs[i].doc_id + ".txt");
    write_file(file, texts[i]);
    manifest << "{\"doc_id\":\"" << json_escape(docs[i].doc_id) << "\",\"title\":\""
             << json_escape(docs[i].title) << "\",\"year\":" << docs[i].year
             << ",\"path\":\"texts/" << json_escape(docs[i].doc_id) << ".txt\"}\n";
  }
  out.docs = docs;
  out.texts = texts;
  return out;
}

inline constexpr const char* kPlantedDocId = "essays-misprinted-1594";

/// Misdating scenario: one volume printed with a wrong year (1594) that
/// mentions Frankenstein, one volume per year 1818..1900 that does, and
/// filler volumes before 1818 that do not.
inline TextCorpus frankenstein_corpus() {
  TextCorpus corpus;
  auto add = [&](std::string id, std::string title, int year, std::string text) {
    corpus.docs.push_back(DocumentMeta{std::move(id), std::move(title), year, "en", ""});
    corpus.texts.push_back(std::move(text));
  };
  add(kPlantedDocId, "Collected Essays", 1594,
      "the engine hummed and I thought of Frankenstein and his patchwork man .");
  for (int year = 1500; year < 1818; year += 7) {
    add("filler-" + std::to_string(year), "Almanack " + std::to_string(year), year,
        "a treatise on the marching of armies and the making of bread .");
  }
  add("campaign-1789", "Campaign Letters", 1789,
      "the regiment crossed the river on pontoons at dawn .");
  for (int year = 1818; year <= 1900; ++year) {
    add("novel-" + std::to_string(year), "Reprint " + std::to_string(year), year,
        "the creature of Frankenstein wandered the ice ; Frankenstein followed .");
  }
  return corpus;
}

}  // namespace ngramscope::testing
