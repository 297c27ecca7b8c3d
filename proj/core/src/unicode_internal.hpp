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
#include <string>
#include <string_view>

#include <unicode/umachine.h>
#include <unicode/utf8.h>

namespace ngramscope::unicode {

inline constexpr UChar32 kReplacement = 0xFFFD;

struct CodePoint {
  UChar32 value = 0;
  // Source bytes; for ill-formed input this is the UTF-8 of U+FFFD.
  std::string_view bytes;
  bool valid = true;
};

/// Forward UTF-8 decoder over a borrowed buffer.
class Utf8Cursor {
 public:
  explicit Utf8Cursor(std::string_view text) : text_(text) {}

  bool done() const { return offset_ >= static_cast<int32_t>(text_.size()); }
  int32_t offset() const { return offset_; }

  CodePoint peek() const {
    int32_t i = offset_;
    return decode(i);
  }

  CodePoint next() { return decode(offset_); }

 private:
  static constexpr std::string_view kReplacementBytes{"\xEF\xBF\xBD"};

  CodePoint decode(int32_t& i) const {
    const auto* s = reinterpret_cast<const uint8_t*>(text_.data());
    const auto length = static_cast<int32_t>(text_.size());
    const int32_t start = i;
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) return {kReplacement, kReplacementBytes, false};
    return {c, text_.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)),
            true};
  }

  std::string_view text_;
  int32_t offset_ = 0;
};

void append_utf8(std::string& out, UChar32 c);

}  // namespace ngramscope::unicode
