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
#include <string_view>
#include <vector>

namespace ngramscope::unicode {

/// Splits UTF-8 text into one string per code point. Ill-formed byte
/// sequences decode to U+FFFD.
std::vector<std::string> code_points(std::string_view text);

/// Unicode simple case folding applied code point by code point. The result
/// has the same number of code points as the input.
std::string fold_case(std::string_view text);

/// Same folding, written into `out` (cleared first) to reuse its buffer.
void fold_case(std::string_view text, std::string& out);

}  // namespace ngramscope::unicode
