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

#ifndef OPTFOLIO_ERROR_HPP_
#define OPTFOLIO_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace optfolio {

enum class ErrorCategory {
  kParse,           // malformed input record
  kSchema,          // missing or ill-typed top-level field
  kDuplicateQuote,  // two quotes for the same (strike, right)
  kSelection,       // requested strike series not available
  kSpec,            // invalid investor parameters
  kBuilder,         // inconsistent model inputs
  kConsistency,     // price side does not match position sign
  kCapacity,        // enumeration or search space too large
  kSolver,          // numerical failure inside the LP
  kResource,        // node budget exhausted
  kIo,              // file system
};

// Short lowercase tag used in `error:<category>:<detail>` lines.
std::string_view CategoryName(ErrorCategory category);

// All library failures are reported through this exception. `detail` is a
// single line without the category prefix.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string detail);

  ErrorCategory category() const { return category_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCategory category_;
  std::string detail_;
};

}  // namespace optfolio

#endif  // OPTFOLIO_ERROR_HPP_
