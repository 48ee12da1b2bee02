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


#include "gradual/infer.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

namespace gradual {

TypeEnv TypeEnv::extend(std::string name, Scheme scheme) const {
  TypeEnv out;
  out.head_ = std::make_shared<const Frame>(Frame{std::move(name), std::move(scheme), head_});
  return out;
}

const Scheme* TypeEnv::lookup(std::string_view name) const {
  for (const Frame* frame = head_.get(); frame; frame = frame->parent.get()) {
    if (frame->name == name) return &frame->scheme;
  }
  return nullptr;
}

bool is_syntactic_value(const Term& t) {
  if (t.is<Term::Lambda>() || t.is<Literal>() || t.is<Term::Var>()) return true;
  if (auto* r = t.as<Term::Record>()) {
    return std::all_of(r->fields.begin(), r->fields.end(),
                       [](const auto& f) { return is_syntactic_value(*f.second); });
  }
  if (auto* i = t.as<Term::Inject>()) return is_syntactic_value(*i->payload);
  if (auto* a = t.as<Term::Annot>()) return is_syntactic_value(*a->term);
  return false;
}

namespace {

void scope_rec(const TypeEnv& env, const Term& t, std::vector<std::string>& bound) {
  auto visit = [&](const TermRef& child) { scope_rec(env, *child, bound); };
  auto with = [&](const std::string& name, const TermRef& child) {
    bound.push_back(name);
    visit(child);
    bound.pop_back();
  };
  if (auto* v = t.as<Term::Var>()) {
    if (std::find(bound.rbegin(), bound.rend(), v->name) == bound.rend() &&
        !env.contains(v->name)) {
      throw TypeError(TypeError::Kind::kUnbound, fmt::format("unbound variable '{}'", v->name),
                      t.span);
    }
  } else if (auto* l = t.as<Term::Lambda>()) {
    with(l->param, l->body);
  } else if (auto* a = t.as<Term::Apply>()) {
    visit(a->fn);
    visit(a->arg);
  } else if (auto* l = t.as<Term::Let>()) {
    if (l->recursive) {
      with(l->name, l->bound);
    } else {
      visit(l->bound);
    }
    with(l->name, l->body);
  } else if (auto* a = t.as<Term::Annot>()) {
    visit(a->term);
  } else if (auto* r = t.as<Term::Record>()) {
    for (const auto& f : r->fields) visit(f.second);
  } else if (auto* p = t.as<Term::Project>()) {
    visit(p->record);
  } else if (auto* i = t.as<Term::Inject>()) {
    visit(i->payload);
  } else if (auto* m = t.as<Term::Match>()) {
    visit(m->scrutinee);
    for (const auto& arm : m->arms) {
      if (arm.binder.empty()) {
        visit(arm.body);
      } else {
        with(arm.binder, arm.body);
      }
    }
  }
}

const Term* strip_annotations(const Term& t) {
  const Term* cur = &t;
  while (auto* a = cur->as<Term::Annot>()) cur = a->term.get();
  return cur;
}

void require_function(const Term& bound, const std::string& name) {
  if (!strip_annotations(bound)->is<Term::Lambda>()) {
    throw TypeError(TypeError::Kind::kShape,
                    fmt::format("'let rec {}' must bind a function", name), bound.span);
  }
}

// Representatives of every variable reachable from `id`.
void collect_vars(TypeStore& store, NodeId id, std::unordered_set<NodeId>& seen,
                  std::vector<NodeId>& out) {
  std::vector<NodeId> work{id};
  while (!work.empty()) {
    NodeId r = store.find(work.back());
    work.pop_back();
    if (!seen.insert(r).second) continue;
    const TypeNode& n = store.node(r);
    if (n.is<TypeNode::Var>()) {
      out.push_back(r);
    } else if (auto* a = n.as<TypeNode::App>()) {
      work.push_back(a->arg);
      work.push_back(a->op);
    } else if (auto* f = n.as<TypeNode::RowField>()) {
      work.push_back(f->tail);
      work.push_back(f->type);
    } else if (auto* m = n.as<TypeNode::Mu>()) {
      work.push_back(m->body);
    }
  }
}

}  // namespace

void check_scope(const TypeEnv& env, const Term& t) {
  std::vector<std::string> bound;
  scope_rec(env, t, bound);
}

TermRef annotate_dynamic_by_default(const TermRef& t) {
  const Span span = t->span;
  auto again = [](const TermRef& child) { return annotate_dynamic_by_default(child); };
  if (auto* l = t->as<Term::Lambda>()) {
    TermRef body = annotate_binder_uses(again(l->body), l->param, types::dyn());
    return make_term(Term::Lambda{l->param, body}, span);
  }
  if (auto* l = t->as<Term::Let>()) {
    TermRef bound = again(l->bound);
    if (!bound->is<Term::Annot>()) {
      bound = make_term(Term::Annot{bound, types::dyn()}, bound->span);
    }
    return make_term(Term::Let{l->recursive, l->name, bound, again(l->body)}, span);
  }
  if (auto* a = t->as<Term::Apply>()) return make_term(Term::Apply{again(a->fn), again(a->arg)}, span);
  if (auto* a = t->as<Term::Annot>()) return make_term(Term::Annot{again(a->term), a->type}, span);
  if (auto* r = t->as<Term::Record>()) {
    Term::Record out;
    for (const auto& f : r->fields) out.fields.emplace_back(f.first, again(f.second));
    return make_term(std::move(out), span);
  }
  if (auto* p = t->as<Term::Project>()) return make_term(Term::Project{again(p->record), p->label}, span);
  if (auto* i = t->as<Term::Inject>()) return make_term(Term::Inject{i->label, again(i->payload)}, span);
  if (auto* m = t->as<Term::Match>()) {
    Term::Match out{again(m->scrutinee), {}};
    for (const auto& arm : m->arms) out.arms.push_back({arm.label, arm.binder, again(arm.body)});
    return make_term(std::move(out), span);
  }
  return t;
}

Scheme builtin_scheme(TypeStore& store, std::string_view type_text, bool numeric) {
  TypeRef type = parse_type(type_text);
  kind_check(*type);
  std::map<std::string, NodeId> vars;
  NodeId body = store.intern(*type, &vars);
  Scheme scheme{{}, body};
  for (const auto& [name, id] : vars) {
    if (numeric) store.set_numeric(id);
    scheme.quantified.push_back(store.find(id));
  }
  return scheme;
}

Inferencer::Inferencer(TypeStore& store) : store_(store), unifier_(store) {
  unifier_.add_observer([this](const UnifyStep& step) {
    auto is_dyn = [&](NodeId id) { return store_.node(store_.find(id)).is<TypeNode::Dyn>(); };
    switch (step.case_number) {
      case 3:
      case 4:
        dyn_met_static_ = true;
        break;
      case 5:
        dyn_met_static_ = dyn_met_static_ || !is_dyn(step.right);
        break;
      case 6:
        dyn_met_static_ = dyn_met_static_ || !is_dyn(step.left);
        break;
      default:
        break;
    }
  });
}

void Inferencer::constrain(NodeId inferred, NodeId expected, Span site, Span error_span) {
  dyn_met_static_ = false;
  try {
    unifier_.unify(inferred, expected);
  } catch (const UnifyError& e) {
    throw TypeError(TypeError::Kind::kInconsistent, e.what(), error_span);
  }
  if (dyn_met_static_) current_->obligations.push_back(site);
}

Scheme Inferencer::generalize(const TypeEnv& env, NodeId type) {
  std::unordered_set<NodeId> env_seen;
  std::vector<NodeId> env_vars;
  env.for_each([&](const std::string&, const Scheme& scheme) {
    std::unordered_set<NodeId> own_seen;
    std::vector<NodeId> own;
    collect_vars(store_, scheme.body, own_seen, own);
    for (NodeId v : own) {
      bool quantified = std::find(scheme.quantified.begin(), scheme.quantified.end(), v) !=
                        scheme.quantified.end();
      if (!quantified) env_seen.insert(v);
    }
  });
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> vars;
  collect_vars(store_, type, seen, vars);
  Scheme scheme{{}, type};
  for (NodeId v : vars) {
    // Arithmetic operands stay monomorphic and are defaulted later.
    if (!env_seen.count(v) && !store_.is_numeric(v)) scheme.quantified.push_back(v);
  }
  return scheme;
}

NodeId Inferencer::instantiate(const Scheme& scheme) {
  if (scheme.quantified.empty()) return scheme.body;
  std::unordered_map<NodeId, NodeId> memo;
  for (NodeId q : scheme.quantified) {
    NodeId r = store_.find(q);
    NodeId fresh = store_.fresh_var();
    if (store_.is_numeric(r)) store_.set_numeric(fresh);
    memo.emplace(r, fresh);
  }
  std::unordered_map<NodeId, bool> reaches;
  std::function<bool(NodeId, std::unordered_set<NodeId>&)> mentions =
      [&](NodeId id, std::unordered_set<NodeId>& open) -> bool {
    NodeId r = store_.find(id);
    if (memo.count(r) && !store_.node(r).is<TypeNode::Mu>()) return true;
    if (auto it = reaches.find(r); it != reaches.end()) return it->second;
    if (!open.insert(r).second) return false;
    const TypeNode& n = store_.node(r);
    bool found = false;
    if (auto* a = n.as<TypeNode::App>()) {
      found = mentions(a->op, open) || mentions(a->arg, open);
    } else if (auto* f = n.as<TypeNode::RowField>()) {
      found = mentions(f->type, open) || mentions(f->tail, open);
    } else if (auto* m = n.as<TypeNode::Mu>()) {
      found = mentions(m->body, open);
    }
    open.erase(r);
    reaches[r] = found;
    return found;
  };
  std::function<NodeId(NodeId)> copy = [&](NodeId id) -> NodeId {
    NodeId r = store_.find(id);
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    std::unordered_set<NodeId> open;
    if (!mentions(r, open)) return r;
    TypeNode::Payload p = store_.node(r).payload;
    if (auto* a = std::get_if<TypeNode::App>(&p)) {
      NodeId op = copy(a->op);
      NodeId out = store_.app(op, copy(a->arg));
      memo.emplace(r, out);
      return out;
    }
    if (auto* f = std::get_if<TypeNode::RowField>(&p)) {
      NodeId ty = copy(f->type);
      NodeId out = store_.field(f->label, ty, copy(f->tail));
      memo.emplace(r, out);
      return out;
    }
    if (auto* m = std::get_if<TypeNode::Mu>(&p)) {
      NodeId mu = store_.new_mu();
      memo.emplace(r, mu);
      NodeId body = copy(m->body);
      store_.set_mu_body(mu, body);
      return mu;
    }
    return r;
  };
  return copy(scheme.body);
}

NodeId Inferencer::infer(const TypeEnv& env, const Term& t) {
  current_->order.push_back(&t);
  NodeId type = infer_node(env, t);
  current_->term_types[&t] = type;
  return type;
}

NodeId Inferencer::infer_node(const TypeEnv& env, const Term& t) {
  if (auto* v = t.as<Term::Var>()) {
    const Scheme* scheme = env.lookup(v->name);
    if (!scheme) {
      throw TypeError(TypeError::Kind::kUnbound, fmt::format("unbound variable '{}'", v->name),
                      t.span);
    }
    // Every use gets its own dyn nodes, so one use cannot fix another's type.
    return store_.copy_every_dyn(instantiate(*scheme));
  }
  if (auto* lit = t.as<Literal>()) {
    static constexpr const char* kNames[] = {"Int", "Double", "String", "Date", "Currency"};
    return store_.ctor(kNames[lit->value.index()]);
  }
  if (auto* l = t.as<Term::Lambda>()) {
    NodeId param = store_.fresh_var();
    NodeId body = infer(env.extend(l->param, Scheme{{}, param}), *l->body);
    return store_.arrow(param, body);
  }
  if (auto* a = t.as<Term::Apply>()) {
    NodeId fn = infer(env, *a->fn);
    NodeId arg = infer(env, *a->arg);
    NodeId result = store_.fresh_var();
    constrain(fn, store_.arrow(arg, result), a->arg->span, t.span);
    return result;
  }
  if (auto* l = t.as<Term::Let>()) {
    NodeId bound;
    if (l->recursive) {
      require_function(*l->bound, l->name);
      NodeId self = store_.fresh_var();
      bound = infer(env.extend(l->name, Scheme{{}, self}), *l->bound);
      constrain(self, bound, l->bound->span, l->bound->span);
    } else {
      bound = infer(env, *l->bound);
    }
    Scheme scheme = is_syntactic_value(*l->bound) ? generalize(env, bound) : Scheme{{}, bound};
    return infer(env.extend(l->name, std::move(scheme)), *l->body);
  }
  if (auto* a = t.as<Term::Annot>()) {
    try {
      Kind kind = kind_check(*a->type);
      if (!(kind == Kind::star())) {
        throw KindError(fmt::format("annotation '{}' has kind {}, not *", pretty_type(*a->type),
                                    to_string(kind)));
      }
    } catch (const KindError& e) {
      throw TypeError(TypeError::Kind::kKind, e.what(), t.span);
    }
    NodeId inner = infer(env, *a->term);
    std::map<std::string, NodeId> vars;
    NodeId annotated = store_.intern(*a->type, &vars);
    constrain(inner, annotated, a->term->span, t.span);
    // The annotation, not the inferred type, is the type of the term.
    return annotated;
  }
  if (auto* r = t.as<Term::Record>()) {
    std::vector<NodeId> fields;
    for (const auto& f : r->fields) fields.push_back(infer(env, *f.second));
    NodeId row = store_.empty_row();
    for (std::size_t i = fields.size(); i-- > 0;) {
      row = store_.field(r->fields[i].first, fields[i], row);
    }
    return store_.record(row);
  }
  if (auto* p = t.as<Term::Project>()) {
    NodeId record = infer(env, *p->record);
    NodeId field = store_.fresh_var();
    NodeId rest = store_.fresh_var();
    constrain(record, store_.record(store_.field(p->label, field, rest)), p->record->span,
              t.span);
    return field;
  }
  if (auto* i = t.as<Term::Inject>()) {
    NodeId payload = infer(env, *i->payload);
    return store_.variant(store_.field(i->label, payload, store_.fresh_var()));
  }
  auto& m = std::get<Term::Match>(t.node);
  NodeId scrutinee = infer(env, *m.scrutinee);
  std::vector<NodeId> payloads;
  for (std::size_t i = 0; i < m.arms.size(); ++i) payloads.push_back(store_.fresh_var());
  NodeId row = store_.empty_row();
  for (std::size_t i = m.arms.size(); i-- > 0;) {
    row = store_.field(m.arms[i].label, payloads[i], row);
  }
  constrain(scrutinee, store_.variant(row), m.scrutinee->span, m.scrutinee->span);
  NodeId result = store_.fresh_var();
  for (std::size_t i = 0; i < m.arms.size(); ++i) {
    const auto& arm = m.arms[i];
    TypeEnv arm_env = arm.binder.empty() ? env : env.extend(arm.binder, Scheme{{}, payloads[i]});
    NodeId body = infer(arm_env, *arm.body);
    constrain(body, result, arm.body->span, arm.body->span);
  }
  return result;
}

void Inferencer::default_numerics() {
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> vars;
  collect_vars(store_, current_->type, seen, vars);
  for (const Term* t : current_->order) collect_vars(store_, current_->term_types.at(t), seen, vars);
  NodeId integer = store_.ctor("Int");
  for (NodeId v : vars) {
    if (store_.is_numeric(v)) store_.merge(integer, v);
  }
}

namespace {

bool needs_cast(const TypeRef& source, const TypeRef& target) {
  return (contains_dyn(*source) || contains_dyn(*target)) && !structurally_equal(*source, *target);
}

}  // namespace

void Inferencer::plan_casts() {
  auto resolved = [&](const Term& t) { return store_.resolve(current_->term_types.at(&t)); };
  for (const Term* t : current_->order) {
    if (auto* a = t->as<Term::Annot>()) {
      TypeRef source = resolved(*a->term);
      TypeRef target = resolved(*t);
      if (needs_cast(source, target)) current_->casts[t] = Cast{source, target};
    } else if (auto* a = t->as<Term::Apply>()) {
      TypeRef fn = resolved(*a->fn);
      auto* arrow = fn->as<SurfaceType::Arrow>();
      if (!arrow) continue;
      TypeRef source = resolved(*a->arg);
      if (needs_cast(source, arrow->domain)) current_->casts[t] = Cast{source, arrow->domain};
    }
  }
}

namespace {

struct CurrentOutcome {
  InferOutcome*& slot;
  CurrentOutcome(InferOutcome*& s, InferOutcome* value) : slot(s) { slot = value; }
  ~CurrentOutcome() { slot = nullptr; }
};

}  // namespace

InferOutcome Inferencer::infer_program(const TypeEnv& env, const TermRef& t) {
  InferOutcome out;
  CurrentOutcome guard(current_, &out);
  check_scope(env, *t);
  out.type = infer(env, *t);
  default_numerics();
  plan_casts();
  return out;
}

Inferencer::BindingOutcome Inferencer::infer_binding(const TypeEnv& env,
                                                     const TopLevel::Binding& binding) {
  BindingOutcome result;
  CurrentOutcome guard(current_, &result.outcome);
  const Term& bound = *binding.bound;
  if (binding.recursive) {
    require_function(bound, binding.name);
    NodeId self = store_.fresh_var();
    TypeEnv inner = env.extend(binding.name, Scheme{{}, self});
    check_scope(inner, bound);
    result.outcome.type = infer(inner, bound);
    constrain(self, result.outcome.type, bound.span, bound.span);
  } else {
    check_scope(env, bound);
    result.outcome.type = infer(env, bound);
  }
  default_numerics();
  plan_casts();
  result.scheme = is_syntactic_value(bound) ? generalize(env, result.outcome.type)
                                            : Scheme{{}, result.outcome.type};
  return result;
}

}  // namespace gradual
