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

#include "ngramscope/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "unicode_internal.hpp"

namespace ngramscope::unicode {

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, error);
  if (error) {
    len = 0;
    U8_APPEND_UNSAFE(reinterpret_cast<uint8_t*>(buf), len, kReplacement);
  }
  out.append(buf, static_cast<std::size_t>(len));
}

std::vector<std::string> code_points(std::string_view text) {
  std::vector<std::string> out;
  Utf8Cursor cursor(text);
  while (!cursor.done()) {
    const auto cp = cursor.next();
    out.emplace_back(cp.bytes);
  }
  return out;
}

std::string fold_case(std::string_view text) {
  std::string out;
  fold_case(text, out);
  return out;
}

void fold_case(std::string_view text, std::string& out) {
  out.clear();
  out.reserve(text.size());
  Utf8Cursor cursor(text);
  while (!cursor.done()) {
    const auto cp = cursor.next();
    if (cp.value < 0x80 && cp.valid) {
      const char ch = static_cast<char>(cp.value);
      out.push_back(ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a') : ch);
      continue;
    }
    append_utf8(out, u_foldCase(cp.value, U_FOLD_CASE_DEFAULT));
  }
}

}  // namespace ngramscope::unicode
