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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ngramscope {

/// Highest n-gram order the index supports.
inline constexpr int kMaxOrder = 5;

/// A word or single punctuation symbol. Never empty, never contains
/// whitespace.
using Token = std::string;

/// Contiguous token window of order 1..kMaxOrder. The canonical text form
/// joins the tokens with a single space.
class Ngram {
 public:
  Ngram() = default;
  explicit Ngram(std::vector<Token> tokens);

  /// Parses canonical (or any whitespace-separated) text. Throws kParameter
  /// when the result is empty or longer than kMaxOrder.
  static Ngram from_text(std::string_view text);

  int order() const noexcept { return static_cast<int>(tokens_.size()); }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  std::string text() const;

  friend bool operator==(const Ngram&, const Ngram&) = default;

 private:
  std::vector<Token> tokens_;
};

/// An n-gram occurrence emitted by extract_ngrams: the window starting at
/// `position` of length `order`.
struct NgramSpan {
  std::size_t position = 0;
  int order = 0;
};

/// Segments text into word and punctuation tokens.
///
/// Maximal runs of letters and decimal digits form words. An apostrophe
/// (U+0027, U+2019) or hyphen (U+002D, U+2010, U+2011) stays inside a word
/// when it sits between two word characters; combining marks continue a
/// word. Any other non-whitespace code point becomes a one-character token.
/// Case is preserved.
std::vector<Token> tokenize(std::string_view text);

/// Every contiguous window of length 1..max_order: all unigrams in document
/// order, then all bigrams, and so on. Throws kParameter unless
/// 1 <= max_order <= kMaxOrder.
std::vector<NgramSpan> extract_ngram_spans(std::size_t token_count, int max_order);

/// Materialized form of extract_ngram_spans.
std::vector<Ngram> extract_ngrams(const std::vector<Token>& tokens, int max_order);

/// Joins tokens[position, position + order) with single spaces.
std::string join_tokens(const std::vector<Token>& tokens, std::size_t position, int order);

}  // namespace ngramscope
