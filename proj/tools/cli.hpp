// Copyright 2026 The embcompress Authors.
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

#ifndef EMBCOMPRESS_TOOLS_CLI_HPP_
#define EMBCOMPRESS_TOOLS_CLI_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "embcompress/report.hpp"

namespace embcompress::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Flat config grammar: one `key = value` per line, `#` starts a comment.
// Duplicate keys and lines without '=' raise PreconditionError.
std::map<std::string, std::string> ParseFlatConfig(std::istream& in);

// Splits a comma-separated list, trimming whitespace and dropping empties.
std::vector<std::string> SplitList(const std::string& value);

// Line chart of value against dim, one series per (method, setting), with
// baseline rows drawn as horizontal reference lines. Rows of other tasks
// are ignored; an empty task selects the first task in the report.
std::string RenderSvg(const EvalReport& report, const std::string& task,
                      const std::string& title);

}  // namespace embcompress::cli

#endif  // EMBCOMPRESS_TOOLS_CLI_HPP_
