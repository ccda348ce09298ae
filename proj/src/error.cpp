// Copyright 2026 The optfolio Authors
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

#include "optfolio/error.hpp"

#include <utility>

namespace optfolio {

std::string_view CategoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParse:
      return "parse";
    case ErrorCategory::kSchema:
      return "schema";
    case ErrorCategory::kDuplicateQuote:
      return "duplicate-quote";
    case ErrorCategory::kSelection:
      return "selection";
    case ErrorCategory::kSpec:
      return "spec";
    case ErrorCategory::kBuilder:
      return "builder";
    case ErrorCategory::kConsistency:
      return "consistency";
    case ErrorCategory::kCapacity:
      return "capacity";
    case ErrorCategory::kSolver:
      return "solver";
    case ErrorCategory::kResource:
      return "resource";
    case ErrorCategory::kIo:
      return "io";
  }
  return "unknown";
}

Error::Error(ErrorCategory category, std::string detail)
    : std::runtime_error("error:" + std::string(CategoryName(category)) + ":" +
                         detail),
      category_(category),
      detail_(std::move(detail)) {}

}  // namespace optfolio
