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

#include <stdexcept>
#include <string>
#include <string_view>

namespace ngramscope {

enum class ErrorKind {
  kParameter,   // argument outside its documented domain
  kParse,       // query text does not follow the phrase grammar
  kManifest,    // corpus manifest is malformed or inconsistent
  kIngest,      // a document listed in the manifest could not be read
  kImport,      // Google-format TSV input is malformed
  kLoad,        // a persisted index file is missing or corrupt
  kIntegrity,   // a persisted file does not match its recorded checksum
  kLookup,      // named corpus or resource does not exist
  kCapability,  // operation needs data the corpus was not built with
  kIo,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ngramscope
