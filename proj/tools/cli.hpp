// Copyright 2026 The ipqp Authors
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


#ifndef IPQP_TOOLS_CLI_HPP
#define IPQP_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ipqp::cli
{

inline constexpr int kExitConverged = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;

/// Runs `ipqp <args...>` (args excludes the program name). Human-readable
/// output goes to `out`, diagnostics to `err`; traces, solutions and CSV are
/// only written to files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ipqp::cli

#endif // IPQP_TOOLS_CLI_HPP
