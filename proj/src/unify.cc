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


#include "gradual/unify.h"

#include <algorithm>

#include <fmt/format.h>

namespace gradual {

namespace {

std::string error_message(UnifyError::Kind kind, const std::string& left,
                          const std::string& right, const std::string& label) {
  switch (kind) {
    case UnifyError::Kind::kConstructorClash:
      return fmt::format("inconsistent types: {} and {}", left, right);
    case UnifyError::Kind::kMissingRowField:
      return fmt::format("inconsistent types: no field '{}' in {}", label, left);
    case UnifyError::Kind::kKindClash:
      return fmt::format("inconsistent types: {} and {} have different kinds", left, right);
    case UnifyError::Kind::kOccursViolation:
      return fmt::format("inconsistent types: {} occurs in {}", left, right);
  }
  return "inconsistent types";
}

bool is_row(const TypeNode& n) { return n.is<TypeNode::RowField>() || n.is<TypeNode::EmptyRow>(); }

}  // namespace

UnifyError::UnifyError(Kind kind, std::string left, std::string right, std::string label)
    : std::runtime_error(error_message(kind, left, right, label)),
      kind_(kind),
      left_(std::move(left)),
      right_(std::move(right)),
      label_(std::move(label)) {}

StepObserver trace_printer(TypeStore& store, std::ostream& out) {
  auto namer = std::make_shared<TypeNamer>();
  return [&store, &out, namer](const UnifyStep& step) {
    auto show = [&](NodeId id) {
      return pretty_type(*store.resolve(id, *namer, ResolveOptions{true}));
    };
    if (step.case_number == 0) {
      out << "CYCLE: ";
    } else {
      out << "CASE " << step.case_number << ": ";
    }
    out << show(step.left) << " ≃ " << show(step.right) << "\n";
  };
}

void Unifier::unify(NodeId left, NodeId right) {
  struct Reset {
    Unifier& self;
    ~Reset() {
      self.store_.clear_visited();
      self.mu_pairs_.clear();
    }
  } reset{*this};
  run(left, right);
}

Constraint Unifier::maybe_copy_dyns(Constraint c) {
  NodeId left = store_.reaches_canonical_dyn(c.left) ? store_.copy_dyn(c.left) : c.left;
  NodeId right = store_.reaches_canonical_dyn(c.right) ? store_.copy_dyn(c.right) : c.right;
  return Constraint{left, right};
}

void Unifier::emit(int case_number, NodeId left, NodeId right) {
  for (const auto& observer : observers_) observer(UnifyStep{case_number, left, right});
}

void Unifier::run(NodeId left0, NodeId right0) {
  NodeId l = store_.find(left0);
  NodeId r = store_.find(right0);
  if (l == r) return;
  // A recursive pair already under comparison is assumed to agree.
  if (store_.was_visited(l) || store_.was_visited(r)) {
    if (mu_pairs_.count({l, r}) || mu_pairs_.count({r, l})) {
      emit(0, l, r);
      return;
    }
  }
  Constraint c = maybe_copy_dyns(Constraint{l, r});
  l = store_.find(c.left);
  r = store_.find(c.right);

  const bool lvar = store_.node(l).is<TypeNode::Var>();
  const bool rvar = store_.node(r).is<TypeNode::Var>();
  const bool ldyn = store_.node(l).is<TypeNode::Dyn>();
  const bool rdyn = store_.node(r).is<TypeNode::Dyn>();

  if (lvar) {
    emit(1, l, r);
    bind_var(l, r);
    return;
  }
  if (rvar) {
    emit(2, l, r);
    bind_var(r, l);
    return;
  }
  NodeId domain, codomain;
  if (ldyn && store_.is_arrow(r, &domain, &codomain)) {
    emit(3, l, r);
    run(domain, store_.new_dyn());
    run(codomain, store_.new_dyn());
    return;
  }
  if (rdyn && store_.is_arrow(l, &domain, &codomain)) {
    emit(4, l, r);
    run(domain, store_.new_dyn());
    run(codomain, store_.new_dyn());
    return;
  }
  if (ldyn) {
    emit(5, l, r);
    if (rdyn) {
      store_.merge(l, r);
    } else {
      store_.merge(r, l);
    }
    return;
  }
  if (rdyn) {
    emit(6, l, r);
    store_.merge(l, r);
    return;
  }
  NodeId d1, c1, d2, c2;
  if (store_.is_arrow(l, &d1, &c1) && store_.is_arrow(r, &d2, &c2)) {
    emit(7, l, r);
    run(d1, d2);
    run(c1, c2);
    return;
  }
  if (store_.node(l).is<TypeNode::RowField>() && store_.node(r).is<TypeNode::RowField>()) {
    rows(l, r);
    return;
  }
  if (auto* m = store_.node(l).as<TypeNode::Mu>()) {
    NodeId body = m->body;
    emit(10, l, r);
    store_.mark_visited(l);
    mu_pairs_.insert({l, r});
    run(body, r);
    return;
  }
  if (auto* m = store_.node(r).as<TypeNode::Mu>()) {
    NodeId body = m->body;
    emit(11, l, r);
    store_.mark_visited(r);
    mu_pairs_.insert({l, r});
    run(l, body);
    return;
  }
  if (store_.node(l).is<TypeNode::EmptyRow>() && store_.node(r).is<TypeNode::EmptyRow>()) {
    emit(12, l, r);
    return;
  }
  congruence(l, r);
}

void Unifier::bind_var(NodeId var, NodeId other) {
  if (store_.node(other).is<TypeNode::Var>()) {
    if (store_.is_numeric(var)) store_.set_numeric(other);
    store_.merge(other, var);
    return;
  }
  if (store_.occurs(var, other)) {
    throw UnifyError(UnifyError::Kind::kOccursViolation, store_.show(var), store_.show(other));
  }
  if (!store_.is_numeric(var)) {
    store_.merge(other, var);
    return;
  }
  // Operands of the overloaded arithmetic operators.
  std::string name;
  std::vector<NodeId> args;
  bool ok = store_.node(other).is<TypeNode::Dyn>();
  std::optional<NodeId> observed;
  if (!ok && store_.spine(other, &name, &args)) {
    ok = (args.empty() && (name == "Int" || name == "Double")) ||
         (name == "Obs" && args.size() == 1);
    if (name == "Obs" && args.size() == 1) observed = args[0];
  }
  if (!ok) {
    throw UnifyError(UnifyError::Kind::kConstructorClash, "a number", store_.show(other));
  }
  store_.merge(other, var);
  if (observed) run(*observed, store_.ctor("Double"));
}

void Unifier::rows(NodeId l, NodeId r) {
  auto lf = *store_.node(l).as<TypeNode::RowField>();
  auto rf = *store_.node(r).as<TypeNode::RowField>();
  if (lf.label == rf.label) {
    emit(8, l, r);
    run(lf.type, rf.type);
    run(lf.tail, rf.tail);
    return;
  }
  // Rows sharing one open tail can only agree when they carry the same labels;
  // otherwise the rearrangement below would never bottom out.
  auto walk = [&](NodeId row, std::vector<std::string>* labels) {
    NodeId cur = store_.find(row);
    while (auto* f = store_.node(cur).as<TypeNode::RowField>()) {
      labels->push_back(f->label);
      cur = store_.find(f->tail);
    }
    return cur;
  };
  std::vector<std::string> left_labels, right_labels;
  NodeId left_tail = walk(l, &left_labels);
  NodeId right_tail = walk(r, &right_labels);
  if (left_tail == right_tail && store_.node(left_tail).is<TypeNode::Var>()) {
    std::sort(left_labels.begin(), left_labels.end());
    std::sort(right_labels.begin(), right_labels.end());
    for (const auto& label : left_labels) {
      if (!std::binary_search(right_labels.begin(), right_labels.end(), label)) {
        throw UnifyError(UnifyError::Kind::kMissingRowField, store_.show(r), store_.show(l),
                         label);
      }
    }
    for (const auto& label : right_labels) {
      if (!std::binary_search(left_labels.begin(), left_labels.end(), label)) {
        throw UnifyError(UnifyError::Kind::kMissingRowField, store_.show(l), store_.show(r),
                         label);
      }
    }
  }
  emit(9, l, r);
  NodeId alpha = store_.fresh_var();
  run(store_.field(lf.label, lf.type, alpha), rf.tail);
  run(store_.field(rf.label, rf.type, alpha), lf.tail);
}

void Unifier::congruence(NodeId l, NodeId r) {
  std::string lname, rname;
  std::vector<NodeId> largs, rargs;
  if (store_.spine(l, &lname, &largs) && store_.spine(r, &rname, &rargs) && lname == rname &&
      largs.size() == rargs.size()) {
    for (std::size_t i = 0; i < largs.size(); ++i) run(largs[i], rargs[i]);
    return;
  }
  clash(l, r);
}

void Unifier::clash(NodeId l, NodeId r) {
  const TypeNode& ln = store_.node(l);
  const TypeNode& rn = store_.node(r);
  if (auto* f = ln.as<TypeNode::RowField>(); f && rn.is<TypeNode::EmptyRow>()) {
    throw UnifyError(UnifyError::Kind::kMissingRowField, store_.show(r), store_.show(l), f->label);
  }
  if (auto* f = rn.as<TypeNode::RowField>(); f && ln.is<TypeNode::EmptyRow>()) {
    throw UnifyError(UnifyError::Kind::kMissingRowField, store_.show(l), store_.show(r), f->label);
  }
  if (is_row(ln) != is_row(rn)) {
    throw UnifyError(UnifyError::Kind::kKindClash, store_.show(l), store_.show(r));
  }
  throw UnifyError(UnifyError::Kind::kConstructorClash, store_.show(l), store_.show(r));
}

}  // namespace gradual
