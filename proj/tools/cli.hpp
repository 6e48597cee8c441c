// Copyright 2026 The ewfnogo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ewfnogo::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;        // expected verdict / feasible / within bound
inline constexpr int kExitError = 1;     // bad input, IO failure
inline constexpr int kExitNegative = 2;  // completed with the other verdict

/// Runs the tool on `args` (without the program name). Results go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Writes `content` to `path` through a sibling temporary file and a rename.
/// Throws std::runtime_error on failure; the destination is left untouched.
void write_file_atomic(const std::string &path, const std::string &content);

}  // namespace ewfnogo::cli
