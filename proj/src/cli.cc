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


#include "gradual/cli.h"

#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gradual/stdlib.h"

namespace gradual {
namespace {

std::string excerpt(std::string_view source, const Span& span) {
  if (span.end > source.size() || span.begin >= span.end) return "";
  std::string text(source.substr(span.begin, span.end - span.begin));
  for (char& c : text) {
    if (c == '\n' || c == '\t') c = ' ';
  }
  if (text.size() > 48) text = text.substr(0, 45) + "...";
  return text;
}

// Prints the diagnostic for the exception in flight and returns its exit code.
int report(std::string_view name, std::string_view source, std::ostream& err) {
  auto at = [&](const Span& span) { return fmt::format("{}:{}", name, to_string(span)); };
  auto context = [&](const Span& span) {
    std::string text = excerpt(source, span);
    if (!text.empty()) fmt::print(err, "  at: {}\n", text);
  };
  try {
    throw;
  } catch (const SyntaxError& e) {
    fmt::print(err, "{}: syntax error: {}\n", at(e.span()), e.what());
    return kExitInput;
  } catch (const TypeError& e) {
    fmt::print(err, "{}: error: {}\n", at(e.span()), e.what());
    context(e.span());
    return kExitStatic;
  } catch (const UnifyError& e) {
    fmt::print(err, "{}: error: {}\n", at(e.span().value_or(Span{})), e.what());
    return kExitStatic;
  } catch (const KindError& e) {
    fmt::print(err, "{}: error: {}\n", name, e.what());
    return kExitStatic;
  } catch (const RuntimeTypeError& e) {
    fmt::print(err, "{}: {}\n", at(e.blame()), e.what());
    context(e.blame());
    return kExitRuntimeType;
  } catch (const RuntimeError& e) {
    fmt::print(err, "{}: runtime error: {}\n", at(e.span()), e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    fmt::print(err, "{}: error: {}\n", name, e.what());
    return kExitRuntime;
  }
}

std::optional<PriceTable> load_prices(const CliConfig& config, std::ostream& err) {
  if (config.prices.empty()) return PriceTable::defaults();
  std::ifstream in(config.prices);
  if (!in) {
    fmt::print(err, "cannot open price table {}\n", config.prices);
    return std::nullopt;
  }
  try {
    return PriceTable::parse(in);
  } catch (const std::exception& e) {
    fmt::print(err, "{}: {}\n", config.prices, e.what());
    return std::nullopt;
  }
}

void dump_types(Session& session, const Session::Result& result, std::string_view source,
                std::ostream& out) {
  for (const Term* t : result.outcome.order) {
    auto it = result.outcome.term_types.find(t);
    if (it == result.outcome.term_types.end()) continue;
    fmt::print(out, "{}\t{}\t: {}\n", to_string(t->span), excerpt(source, t->span),
               session.store().show(it->second));
  }
}

void print_result(const Session::Result& result, bool type_only, std::ostream& out) {
  std::string prefix = result.name.empty() ? "" : result.name + " = ";
  if (type_only || !result.value) {
    fmt::print(out, "{}\n", result.name.empty() ? result.type : result.name + " : " + result.type);
  } else {
    fmt::print(out, "{}{} : {}\n", prefix, render(*result.value), result.type);
  }
}

Session::Options session_options(const CliConfig& config) {
  Session::Options options;
  options.dynamic_by_default = config.dynamic_by_default;
  return options;
}

}  // namespace

int run_source(const CliConfig& config, std::string_view source, std::string_view name,
               std::ostream& out, std::ostream& err) {
  auto prices = load_prices(config, err);
  if (!prices) return kExitInput;
  Session session(std::move(*prices), session_options(config));
  if (config.dump_prelude) fmt::print(out, "{}", dump_prelude(session));
  if (config.trace_unify) session.set_trace(&out);
  bool type_only = config.mode == CliConfig::Mode::kTypeOnly;
  try {
    // Type first so --dump-types output precedes any runtime failure.
    Session::Result typed = session.run(source, false);
    session.set_trace(nullptr);
    if (config.dump_types) dump_types(session, typed, source, out);
    if (type_only) {
      print_result(typed, true, out);
      return kExitOk;
    }
    Session::Result result = session.run(source, true);
    print_result(result, false, out);
    return kExitOk;
  } catch (...) {
    return report(name, source, err);
  }
}

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  if (config.mode == CliConfig::Mode::kRepl) return repl(config, in, out, err);
  std::string source;
  if (config.file.empty() && config.dump_prelude) {
    auto prices = load_prices(config, err);
    if (!prices) return kExitInput;
    Session session(std::move(*prices));
    fmt::print(out, "{}", dump_prelude(session));
    return kExitOk;
  }
  if (config.file.empty() || config.file == "-") {
    source.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream file(config.file, std::ios::binary);
    if (!file) {
      fmt::print(err, "cannot open {}\n", config.file);
      return kExitInput;
    }
    source.assign(std::istreambuf_iterator<char>(file), {});
  }
  return run_source(config, source, config.file.empty() ? "-" : config.file, out, err);
}

int repl(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  auto prices = load_prices(config, err);
  if (!prices) return kExitInput;
  Session session(std::move(*prices), session_options(config));
  if (config.trace_unify) session.set_trace(&out);
  std::string line;
  while (true) {
    if (config.prompt) {
      fmt::print(out, "> ");
      out.flush();
    }
    if (!std::getline(in, line)) break;
    std::string_view text = line;
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    if (text.empty() || text.front() == '#') continue;
    if (text == ":quit" || text == ":q") break;
    bool type_only = false;
    if (text.starts_with(":type ")) {
      text.remove_prefix(6);
      type_only = true;
    } else if (text.front() == ':') {
      fmt::print(err, "unknown command {}\n", text);
      continue;
    }
    try {
      if (type_only) {
        print_result(session.run(text, false), true, out);
      } else {
        Session::Result result = session.run(text, true);
        if (config.dump_types) dump_types(session, result, text, out);
        print_result(result, false, out);
      }
    } catch (...) {
      report("<repl>", text, err);
    }
  }
  return kExitOk;
}

}  // namespace gradual
