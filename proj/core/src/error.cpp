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

#include "ngramscope/error.hpp"

namespace ngramscope {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kManifest: return "manifest";
    case ErrorKind::kIngest: return "ingest";
    case ErrorKind::kImport: return "import";
    case ErrorKind::kLoad: return "load";
    case ErrorKind::kIntegrity: return "integrity";
    case ErrorKind::kLookup: return "lookup";
    case ErrorKind::kCapability: return "capability";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace ngramscope
