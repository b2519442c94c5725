// Copyright 2026 The Authors.
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

#ifndef SACO_TOOLS_COMMANDS_H_
#define SACO_TOOLS_COMMANDS_H_

#include <ostream>
#include <span>
#include <string>

namespace saco::cli {

// Runs the `saco` command line (args[0] is the program name) and returns the
// process exit code: 0 on success, 1 on any error, CLI11's code on usage
// errors.
int RunCli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace saco::cli

#endif  // SACO_TOOLS_COMMANDS_H_
