/*
   Copyright 2026 The ay-surfaces Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ay::cli {

inline constexpr std::uint64_t default_seed = 20260101;
/// Directory for build output when --path is not given.
inline constexpr const char* output_dir_env = "AY_OUTPUT_DIR";

/// Runs one command line (without the program name).  The JSON report goes to
/// out, a one-line summary and diagnostics to err.  Returns 0 when every check
/// passes, 1 on a failed check, 2 on malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ay::cli
