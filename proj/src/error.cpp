// Copyright 2026 The bginit Authors.
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

#include "bginit/error.hpp"

namespace bginit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid input";
    case ErrorKind::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorKind::kEmptyInput:
      return "empty input";
    case ErrorKind::kDecodeFailed:
      return "decode failed";
    case ErrorKind::kInvalidScript:
      return "invalid scene script";
    case ErrorKind::kInvalidConfig:
      return "invalid config";
    case ErrorKind::kIo:
      return "i/o error";
  }
  return "error";
}

}  // namespace bginit
