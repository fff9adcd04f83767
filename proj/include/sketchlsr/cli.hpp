// Copyright 2026 the sketchlsr authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace sketchlsr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;     // bad flags, files, config or bound inputs
inline constexpr int kExitNumericalError = 3;  // rank, factorization, sampling, certificate

/// Runs one command. `args` excludes the program name. The result envelope
/// goes to `out` unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sketchlsr::cli
