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

#ifndef OPTFOLIO_CLI_HPP_
#define OPTFOLIO_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace optfolio::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

// Runs one command line (args[0] is the program name). Results go to `out`
// unless --output is given; failures are reported on `err` as a single
// `error:<category>:<detail>` line.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optfolio::cli

#endif  // OPTFOLIO_CLI_HPP_
