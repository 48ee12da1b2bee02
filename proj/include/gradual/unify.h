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


#ifndef GRADUAL_UNIFY_H_
#define GRADUAL_UNIFY_H_

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gradual/syntax.h"
#include "gradual/typegraph.h"

namespace gradual {

struct Constraint {
  NodeId left;
  NodeId right;
};

class UnifyError : public std::runtime_error {
 public:
  enum class Kind { kConstructorClash, kMissingRowField, kKindClash, kOccursViolation };

  UnifyError(Kind kind, std::string left, std::string right, std::string label = {});

  Kind kind() const { return kind_; }
  const std::string& left() const { return left_; }
  const std::string& right() const { return right_; }
  const std::string& label() const { return label_; }
  const std::optional<Span>& span() const { return span_; }
  void set_span(Span span) { span_ = span; }

 private:
  Kind kind_;
  std::string left_;
  std::string right_;
  std::string label_;
  std::optional<Span> span_;
};

// One dispatch decision. Case numbers follow the algorithm; 0 marks a
// revisited recursive pair that was cut off.
struct UnifyStep {
  int case_number;
  NodeId left;
  NodeId right;
};

using StepObserver = std::function<void(const UnifyStep&)>;

// Writes `CASE <n>: lhs ≃ rhs` lines with variable names stable across calls.
StepObserver trace_printer(TypeStore& store, std::ostream& out);

class Unifier {
 public:
  explicit Unifier(TypeStore& store) : store_(store) {}

  void add_observer(StepObserver observer) { observers_.push_back(std::move(observer)); }

  // Solves one top-level constraint. Visited marks last for this call only.
  void unify(NodeId left, NodeId right);

  // Copies a side only while it can still reach the canonical dyn, which makes
  // the copy happen once per top-level constraint.
  Constraint maybe_copy_dyns(Constraint c);

  TypeStore& store() { return store_; }

 private:
  void run(NodeId left, NodeId right);
  void bind_var(NodeId var, NodeId other);
  void rows(NodeId left, NodeId right);
  void congruence(NodeId left, NodeId right);
  void emit(int case_number, NodeId left, NodeId right);
  [[noreturn]] void clash(NodeId left, NodeId right);

  TypeStore& store_;
  std::vector<StepObserver> observers_;
  std::set<std::pair<NodeId, NodeId>> mu_pairs_;
};

}  // namespace gradual

#endif  // GRADUAL_UNIFY_H_
