// Copyright 2026 The Gradual Authors
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


// Batch runner and REPL.

#ifndef GRADUAL_CLI_H_
#define GRADUAL_CLI_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace gradual {

struct CliConfig {
  enum class Mode { kRun, kRepl, kTypeOnly };
  Mode mode = Mode::kRun;
  std::string file;  // "-" reads standard input
  bool dynamic_by_default = false;
  bool dump_types = false;
  bool trace_unify = false;
  bool dump_prelude = false;
  std::string prices;  // empty selects the embedded table
  bool prompt = false;  // REPL prompt, for interactive terminals
};

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitStatic = 2,
  kExitRuntimeType = 3,
  kExitRuntime = 4,
};

// Runs one program. `source` is the program text and `name` labels
// diagnostics. Results go to `out`, diagnostics to `err`.
int run_source(const CliConfig& config, std::string_view source, std::string_view name,
               std::ostream& out, std::ostream& err);

// Reads config.file (or `in` for "-") and runs it, or starts the REPL.
int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

// Reads one input per line until end of input or `:quit`. Errors are
// reported and the loop continues.
int repl(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gradual

#endif  // GRADUAL_CLI_H_
