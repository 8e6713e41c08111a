// Copyright 2026 The sirw Authors.
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

#ifndef SIRW_COMMANDS_HPP_
#define SIRW_COMMANDS_HPP_

#include <string>
#include <vector>

#include "sirw/config.hpp"

namespace sirw {

const char* toolkit_version() noexcept;

enum class Command { kSimulate, kOde, kPhase, kSweep, kValidate };

const char* command_name(Command c) noexcept;
Command parse_command(const std::string& name);
// Output path used when none is given. For sweep this is a directory.
std::string default_out(Command c);

struct CommandResult {
  // One JSON document summarising the run; printed by the CLI.
  std::string summary_json;
  std::vector<std::string> files;  // written, in order
};

// Config with the defaults of `c` filled in. This is what meta.json records
// (minus `workers`), so feeding meta.json back reproduces the run.
Config resolved_config(Command c, const Config& config);

CommandResult run_command(Command c, const Config& config, const std::string& out);

}  // namespace sirw

#endif  // SIRW_COMMANDS_HPP_
