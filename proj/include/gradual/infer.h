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


#ifndef GRADUAL_INFER_H_
#define GRADUAL_INFER_H_

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gradual/syntax.h"
#include "gradual/typegraph.h"
#include "gradual/unify.h"

namespace gradual {

// Persistent scope chain: extending never disturbs the parent.
class TypeEnv {
 public:
  TypeEnv extend(std::string name, Scheme scheme) const;
  const Scheme* lookup(std::string_view name) const;
  bool contains(std::string_view name) const { return lookup(name) != nullptr; }

  template <typename F>
  void for_each(F&& f) const {
    for (const Frame* frame = head_.get(); frame; frame = frame->parent.get()) {
      f(frame->name, frame->scheme);
    }
  }

 private:
  struct Frame {
    std::string name;
    Scheme scheme;
    std::shared_ptr<const Frame> parent;
  };
  std::shared_ptr<const Frame> head_;
};

class TypeError : public std::runtime_error {
 public:
  enum class Kind { kInconsistent, kUnbound, kKind, kShape };
  TypeError(Kind kind, const std::string& message, Span span)
      : std::runtime_error(message), kind_(kind), span_(span) {}
  Kind kind() const { return kind_; }
  const Span& span() const { return span_; }

 private:
  Kind kind_;
  Span span_;
};

// A runtime check from `source` to `target`.
struct Cast {
  TypeRef source;
  TypeRef target;
};

struct InferOutcome {
  NodeId type = 0;
  std::unordered_map<const Term*, NodeId> term_types;
  // Pre-order, for reporting.
  std::vector<const Term*> order;
  // Constraint sites where a dyn met a static type.
  std::vector<Span> obligations;
  // Keyed by annotation terms (cast of the inner value) and applications
  // (cast of the argument).
  std::unordered_map<const Term*, Cast> casts;
};

bool is_syntactic_value(const Term& t);

// Throws TypeError(kUnbound) at the first free variable not in `env`.
void check_scope(const TypeEnv& env, const Term& t);

// Gives every unannotated lambda parameter and let-bound right-hand side a `?`
// annotation. Idempotent.
TermRef annotate_dynamic_by_default(const TermRef& t);

// Scheme for a builtin signature. With `numeric`, every variable is an
// arithmetic operand.
Scheme builtin_scheme(TypeStore& store, std::string_view type_text, bool numeric = false);

class Inferencer {
 public:
  explicit Inferencer(TypeStore& store);

  TypeStore& store() { return store_; }
  Unifier& unifier() { return unifier_; }

  InferOutcome infer_program(const TypeEnv& env, const TermRef& t);

  struct BindingOutcome {
    Scheme scheme;
    InferOutcome outcome;
  };
  BindingOutcome infer_binding(const TypeEnv& env, const TopLevel::Binding& binding);

  Scheme generalize(const TypeEnv& env, NodeId type);
  NodeId instantiate(const Scheme& scheme);

 private:
  NodeId infer(const TypeEnv& env, const Term& t);
  NodeId infer_node(const TypeEnv& env, const Term& t);
  void constrain(NodeId inferred, NodeId expected, Span site, Span error_span);
  void finish(const Term& root);
  void default_numerics();
  void plan_casts();

  TypeStore& store_;
  Unifier unifier_;
  InferOutcome* current_ = nullptr;
  bool dyn_met_static_ = false;
};

}  // namespace gradual

#endif  // GRADUAL_INFER_H_
