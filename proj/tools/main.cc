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


#include <unistd.h>

#include <iostream>

#include <CLI11.hpp>

#include "gradual/cli.h"

int main(int argc, char** argv) {
  gradual::CliConfig config;
  CLI::App app{"Gradually typed contract language: run a program or start a REPL"};
  app.add_option("file", config.file, "Program to run; '-' reads standard input");
  bool repl = false;
  bool type_only = false;
  app.add_flag("--repl", repl, "Start an interactive session");
  app.add_flag("--type-only", type_only, "Print the program's type without running it");
  app.add_flag("--dynamic-by-default", config.dynamic_by_default,
               "Treat unannotated parameters and let bindings as ?");
  app.add_flag("--dump-types", config.dump_types, "Print the type of every subterm");
  app.add_flag("--trace-unify", config.trace_unify, "Print each unification step");
  app.add_flag("--dump-prelude", config.dump_prelude, "Print the prelude with its types");
  app.add_option("--prices", config.prices, "Price table (date,name,price lines)")
      ->check(CLI::ExistingFile);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : gradual::kExitInput;
  }
  if (repl && type_only) {
    std::cerr << "--repl and --type-only are exclusive\n";
    return gradual::kExitInput;
  }
  if (repl || (config.file.empty() && !config.dump_prelude)) {
    config.mode = gradual::CliConfig::Mode::kRepl;
    config.prompt = isatty(STDIN_FILENO);
  } else if (type_only) {
    config.mode = gradual::CliConfig::Mode::kTypeOnly;
  }
  return gradual::run(config, std::cin, std::cout, std::cerr);
}
