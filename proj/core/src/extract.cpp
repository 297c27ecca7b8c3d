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

#include "ngramscope/extract.hpp"

#include <unicode/uchar.h>

#include "ngramscope/error.hpp"
#include "unicode_internal.hpp"

namespace ngramscope {
namespace {

using unicode::CodePoint;
using unicode::Utf8Cursor;

bool is_word_start(const CodePoint& cp) { return cp.valid && u_isalnum(cp.value); }

bool is_mark(const CodePoint& cp) {
  return cp.valid && (U_GET_GC_MASK(cp.value) & U_GC_M_MASK) != 0;
}

bool is_joiner(const CodePoint& cp) {
  switch (cp.value) {
    case 0x0027:  // apostrophe
    case 0x2019:  // right single quotation mark
    case 0x002D:  // hyphen-minus
    case 0x2010:  // hyphen
    case 0x2011:  // non-breaking hyphen
      return cp.valid;
    default:
      return false;
  }
}

bool is_space(const CodePoint& cp) { return cp.valid && u_isUWhiteSpace(cp.value); }

void check_order(int max_order) {
  if (max_order < 1 || max_order > kMaxOrder) {
    throw Error(ErrorKind::kParameter,
                "max_order must be in 1.." + std::to_string(kMaxOrder) + ", got " +
                    std::to_string(max_order));
  }
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Utf8Cursor cursor(text);
  std::string word;

  auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };

  while (!cursor.done()) {
    const CodePoint cp = cursor.next();
    if (is_space(cp)) {
      flush();
    } else if (is_word_start(cp) || (!word.empty() && is_mark(cp))) {
      word.append(cp.bytes);
    } else if (!word.empty() && is_joiner(cp) && !cursor.done() &&
               is_word_start(cursor.peek())) {
      word.append(cp.bytes);
    } else {
      flush();
      tokens.emplace_back(cp.bytes);
    }
  }
  flush();
  return tokens;
}

Ngram::Ngram(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

Ngram Ngram::from_text(std::string_view text) {
  std::vector<Token> tokens;
  Utf8Cursor cursor(text);
  std::string current;
  while (!cursor.done()) {
    const CodePoint cp = cursor.next();
    if (is_space(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.append(cp.bytes);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  if (tokens.empty()) throw Error(ErrorKind::kParameter, "n-gram text is empty");
  if (static_cast<int>(tokens.size()) > kMaxOrder) {
    throw Error(ErrorKind::kParameter, "n-gram \"" + std::string(text) + "\" has order " +
                                           std::to_string(tokens.size()) + " > " +
                                           std::to_string(kMaxOrder));
  }
  return Ngram(std::move(tokens));
}

std::string Ngram::text() const { return join_tokens(tokens_, 0, order()); }

std::string join_tokens(const std::vector<Token>& tokens, std::size_t position, int order) {
  std::string out;
  for (int i = 0; i < order; ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[position + static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<NgramSpan> extract_ngram_spans(std::size_t token_count, int max_order) {
  check_order(max_order);
  std::vector<NgramSpan> spans;
  for (int n = 1; n <= max_order; ++n) {
    const auto width = static_cast<std::size_t>(n);
    if (token_count < width) break;
    for (std::size_t pos = 0; pos + width <= token_count; ++pos) spans.push_back({pos, n});
  }
  return spans;
}

std::vector<Ngram> extract_ngrams(const std::vector<Token>& tokens, int max_order) {
  std::vector<Ngram> out;
  for (const auto& span : extract_ngram_spans(tokens.size(), max_order)) {
    out.emplace_back(std::vector<Token>(tokens.begin() + static_cast<std::ptrdiff_t>(span.position),
                                        tokens.begin() + static_cast<std::ptrdiff_t>(span.position) +
                                            span.order));
  }
  return out;
}

}  // namespace ngramscope
