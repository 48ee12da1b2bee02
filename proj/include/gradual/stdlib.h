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


// The standard prelude and an interpreter session that carries the typing
// and value environments across top-level inputs.

#ifndef GRADUAL_STDLIB_H_
#define GRADUAL_STDLIB_H_

#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gradual/infer.h"
#include "gradual/runtime.h"
#include "gradual/syntax.h"
#include "gradual/typegraph.h"

namespace gradual {

struct PreludeEntry {
  std::string name;
  std::string source;  // a `let` binding with no `in`
};

const std::vector<PreludeEntry>& prelude();

class Session {
 public:
  struct Options {
    bool prelude = true;
    // Applies only to user input, never to the prelude.
    bool dynamic_by_default = false;
  };

  explicit Session(PriceTable prices = PriceTable::defaults());
  Session(PriceTable prices, Options options);

  TypeStore& store() { return *store_; }
  Inferencer& inferencer() { return *inferencer_; }
  Evaluator& evaluator() { return evaluator_; }
  const TypeEnv& types() const { return types_; }
  const ValueEnv& values() const { return values_; }

  struct Result {
    std::string name;  // empty for a plain term
    std::string type;
    ValueRef value;    // null when not evaluated
    InferOutcome outcome;
    TermRef term;      // after any dynamic-by-default rewrite
  };

  // Parses, type checks and (with `evaluate`) runs one top-level input. A
  // binding extends the session. Throws SyntaxError, TypeError,
  // RuntimeTypeError or RuntimeError.
  Result run(std::string_view source, bool evaluate = true);
  Result run_term(const TermRef& term, bool evaluate = true);
  Result define(const TopLevel::Binding& binding, bool evaluate = true);

  // Prints every unification step of later inputs to `out`; null stops it.
  void set_trace(std::ostream* out);

  // Display form of a bound name's type scheme, or empty when unbound.
  std::string type_of(std::string_view name);

 private:
  TermRef prepare(const TermRef& t) const;

  std::unique_ptr<TypeStore> store_;
  std::unique_ptr<Inferencer> inferencer_;
  Evaluator evaluator_;
  TypeEnv types_;
  ValueEnv values_;
  Options options_;
  StepObserver trace_;
};

// `name : type` for every prelude binding, followed by its source.
std::string dump_prelude(Session& session);

}  // namespace gradual

#endif  // GRADUAL_STDLIB_H_
