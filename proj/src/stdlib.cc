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


#include "gradual/stdlib.h"

#include <fmt/format.h>

namespace gradual {

const std::vector<PreludeEntry>& prelude() {
  static const std::vector<PreludeEntry> entries = {
      {"receive", "let receive currency amount = scale amount (one currency)"},
      {"european_stock_option",
       R"(let european_stock_option args =
  let first = stock_price args.effective_date args.company in
  let last = stock_price args.expiry_date args.company in
  let payoff = match args.call_or_put with
    | Call -> (last / first - const args.strike)
    | Put -> (const args.strike - last / first)
  in
  european args.expiry_date (receive args.currency payoff))"},
      {"receive_dyn", "let receive_dyn currency amount = amount ** one currency"},
  };
  return entries;
}

Session::Session(PriceTable prices) : Session(std::move(prices), Options{}) {}

Session::Session(PriceTable prices, Options options)
    : store_(std::make_unique<TypeStore>()),
      inferencer_(std::make_unique<Inferencer>(*store_)),
      evaluator_(std::move(prices)),
      options_(options) {
  inferencer_->unifier().add_observer([this](const UnifyStep& step) {
    if (trace_) trace_(step);
  });
  Builtins b = builtins(*store_);
  types_ = b.types;
  values_ = b.values;
  if (!options_.prelude) return;
  bool dynamic = options_.dynamic_by_default;
  options_.dynamic_by_default = false;
  for (const auto& entry : prelude()) run(entry.source);
  options_.dynamic_by_default = dynamic;
}

TermRef Session::prepare(const TermRef& t) const {
  return options_.dynamic_by_default ? annotate_dynamic_by_default(t) : t;
}

Session::Result Session::run(std::string_view source, bool evaluate) {
  TopLevel top = parse_toplevel(source);
  if (auto* binding = std::get_if<TopLevel::Binding>(&top.item)) return define(*binding, evaluate);
  return run_term(std::get<TermRef>(top.item), evaluate);
}

Session::Result Session::run_term(const TermRef& term, bool evaluate) {
  Result result;
  result.term = prepare(term);
  result.outcome = inferencer_->infer_program(types_, result.term);
  result.type = store_->show(result.outcome.type);
  if (evaluate) {
    auto casts = std::make_shared<const CastTable>(result.outcome.casts);
    result.value = evaluator_.eval(result.term, values_, casts);
  }
  return result;
}

Session::Result Session::define(const TopLevel::Binding& binding, bool evaluate) {
  TopLevel::Binding b = binding;
  b.bound = prepare(b.bound);
  auto typed = inferencer_->infer_binding(types_, b);
  Result result;
  result.name = b.name;
  result.type = store_->show(typed.scheme.body);
  result.outcome = std::move(typed.outcome);
  result.term = b.bound;
  if (evaluate) {
    // A `let rec` binding evaluates as `let rec name = bound in name`.
    auto casts = std::make_shared<const CastTable>(result.outcome.casts);
    TermRef body = make_term(Term::Var{b.name}, b.bound->span);
    TermRef program = make_term(Term::Let{b.recursive, b.name, b.bound, body}, b.bound->span);
    result.value = evaluator_.eval(program, values_, casts);
    values_ = values_.extend(b.name, result.value);
  }
  types_ = types_.extend(b.name, typed.scheme);
  return result;
}

void Session::set_trace(std::ostream* out) {
  trace_ = out ? trace_printer(*store_, *out) : StepObserver{};
}

std::string Session::type_of(std::string_view name) {
  const Scheme* scheme = types_.lookup(name);
  return scheme ? store_->show(scheme->body) : std::string();
}

std::string dump_prelude(Session& session) {
  std::string out;
  for (const auto& entry : prelude()) {
    out += fmt::format("{} : {}\n{}\n\n", entry.name, session.type_of(entry.name), entry.source);
  }
  return out;
}

}  // namespace gradual
