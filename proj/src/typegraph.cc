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


#include "gradual/typegraph.h"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include <fmt/format.h>

namespace gradual {

Kind Kind::star() { return Kind{}; }

Kind Kind::row() { return Kind{Tag::kRow, nullptr, nullptr}; }

Kind Kind::arrow(Kind from, Kind to) {
  return Kind{Tag::kArrow, std::make_shared<const Kind>(std::move(from)),
              std::make_shared<const Kind>(std::move(to))};
}

bool operator==(const Kind& a, const Kind& b) {
  if (a.tag != b.tag) return false;
  if (a.tag != Kind::Tag::kArrow) return true;
  return *a.from == *b.from && *a.to == *b.to;
}

std::string to_string(const Kind& kind) {
  switch (kind.tag) {
    case Kind::Tag::kStar:
      return "*";
    case Kind::Tag::kRow:
      return "row";
    case Kind::Tag::kArrow: {
      std::string from = to_string(*kind.from);
      if (kind.from->tag == Kind::Tag::kArrow) from = "(" + from + ")";
      return from + " => " + to_string(*kind.to);
    }
  }
  return "?";
}

const KindEnv& builtin_kinds() {
  static const KindEnv env = [] {
    KindEnv e;
    for (const char* name : {"Int", "Double", "String", "Date", "Currency", "Contract"}) {
      e.emplace(name, Kind::star());
    }
    e.emplace("Obs", Kind::arrow(Kind::star(), Kind::star()));
    e.emplace("List", Kind::arrow(Kind::star(), Kind::star()));
    e.emplace(ctor_names::kArrow,
              Kind::arrow(Kind::star(), Kind::arrow(Kind::star(), Kind::star())));
    e.emplace(ctor_names::kRecord, Kind::arrow(Kind::row(), Kind::star()));
    e.emplace(ctor_names::kVariant, Kind::arrow(Kind::row(), Kind::star()));
    return e;
  }();
  return env;
}

namespace {

class KindChecker {
 public:
  explicit KindChecker(const KindEnv& env) : env_(env) {}

  Kind check(const SurfaceType& t, const Kind* expected) {
    Kind k = infer(t, expected);
    if (expected && !(k == *expected)) {
      throw KindError(fmt::format("kind mismatch: '{}' has kind {} but {} is required",
                                  pretty_type(t), to_string(k), to_string(*expected)));
    }
    return k;
  }

 private:
  Kind infer(const SurfaceType& t, const Kind* expected) {
    const Kind star = Kind::star();
    const Kind row = Kind::row();
    if (auto* v = t.as<SurfaceType::Var>()) {
      for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
        if (it->first == v->name) return it->second;
      }
      auto [it, inserted] = free_.try_emplace(v->name, expected ? *expected : star);
      return it->second;
    }
    if (auto* c = t.as<SurfaceType::Con>()) {
      auto it = env_.find(c->name);
      if (it == env_.end()) throw KindError(fmt::format("unknown type constructor '{}'", c->name));
      Kind k = it->second;
      for (const auto& arg : c->args) {
        if (k.tag != Kind::Tag::kArrow) {
          throw KindError(fmt::format("'{}' is applied to too many arguments", c->name));
        }
        check(*arg, k.from.get());
        k = *k.to;
      }
      return k;
    }
    if (auto* a = t.as<SurfaceType::Arrow>()) {
      check(*a->domain, &star);
      check(*a->codomain, &star);
      return star;
    }
    if (auto* r = t.as<SurfaceType::Record>()) {
      check(*r->row, &row);
      return star;
    }
    if (auto* r = t.as<SurfaceType::Variant>()) {
      check(*r->row, &row);
      return star;
    }
    if (auto* f = t.as<SurfaceType::RowField>()) {
      check(*f->type, &star);
      check(*f->tail, &row);
      return row;
    }
    if (t.is<SurfaceType::EmptyRow>()) return row;
    if (auto* m = t.as<SurfaceType::Mu>()) {
      bound_.emplace_back(m->var, star);
      check(*m->body, &star);
      bound_.pop_back();
      return star;
    }
    return star;  // Dyn
  }

  const KindEnv& env_;
  std::vector<std::pair<std::string, Kind>> bound_;
  std::map<std::string, Kind> free_;
};

// A mu binder must be separated from its uses by at least one constructor.
bool guarded(const SurfaceType& body, const std::string& var) {
  if (auto* v = body.as<SurfaceType::Var>()) return v->name != var;
  if (auto* m = body.as<SurfaceType::Mu>()) return m->var == var || guarded(*m->body, var);
  return true;
}

void check_guarded(const SurfaceType& t) {
  auto recur = [](const TypeRef& child) { check_guarded(*child); };
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, SurfaceType::Con>) {
          for (const auto& a : n.args) recur(a);
        } else if constexpr (std::is_same_v<N, SurfaceType::Arrow>) {
          recur(n.domain);
          recur(n.codomain);
        } else if constexpr (std::is_same_v<N, SurfaceType::Record> ||
                             std::is_same_v<N, SurfaceType::Variant>) {
          recur(n.row);
        } else if constexpr (std::is_same_v<N, SurfaceType::RowField>) {
          recur(n.type);
          recur(n.tail);
        } else if constexpr (std::is_same_v<N, SurfaceType::Mu>) {
          if (!guarded(*n.body, n.var)) {
            throw KindError(fmt::format("recursive type 'mu {}' has no constructor between "
                                        "the binder and its use",
                                        n.var));
          }
          recur(n.body);
        }
      },
      t.node);
}

}  // namespace

Kind kind_check(const SurfaceType& type, const KindEnv& env) {
  check_guarded(type);
  KindChecker checker(env);
  return checker.check(type, nullptr);
}

std::string TypeNamer::name_for(NodeId rep) {
  auto it = names_.find(rep);
  if (it != names_.end()) return it->second;
  std::string name = fresh();
  names_.emplace(rep, name);
  return name;
}

std::string TypeNamer::fresh() {
  std::uint32_t n = next_++;
  std::string name(1, static_cast<char>('a' + n % 26));
  if (n >= 26) name += std::to_string(n / 26);
  return name;
}

TypeStore::TypeStore() { canonical_dyn_ = add(TypeNode::Dyn{next_dyn_++, true}); }

NodeId TypeStore::add(TypeNode::Payload payload) {
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(TypeNode{std::move(payload), id, false});
  return id;
}

NodeId TypeStore::fresh_var() { return add(TypeNode::Var{next_var_++, false}); }

NodeId TypeStore::new_dyn() { return add(TypeNode::Dyn{next_dyn_++, false}); }

NodeId TypeStore::ctor(const std::string& name) {
  auto it = ctors_.find(name);
  if (it != ctors_.end()) return it->second;
  auto kind = builtin_kinds().find(name);
  if (kind == builtin_kinds().end()) {
    throw KindError(fmt::format("unknown type constructor '{}'", name));
  }
  NodeId id = add(TypeNode::Ctor{name, kind->second});
  ctors_.emplace(name, id);
  return id;
}

NodeId TypeStore::app(NodeId op, NodeId arg) { return add(TypeNode::App{op, arg}); }

NodeId TypeStore::arrow(NodeId domain, NodeId codomain) {
  return app(app(ctor(ctor_names::kArrow), domain), codomain);
}

NodeId TypeStore::record(NodeId row) { return app(ctor(ctor_names::kRecord), row); }

NodeId TypeStore::variant(NodeId row) { return app(ctor(ctor_names::kVariant), row); }

NodeId TypeStore::field(const std::string& label, NodeId type, NodeId tail) {
  return add(TypeNode::RowField{label, type, tail});
}

NodeId TypeStore::empty_row() { return add(TypeNode::EmptyRow{}); }

NodeId TypeStore::new_mu() {
  // The binder is merged into the Mu node, so every use of the bound
  // variable already points at the recursive type.
  NodeId binder = fresh_var();
  NodeId mu = add(TypeNode::Mu{binder, binder});
  merge(mu, binder);
  return mu;
}

void TypeStore::set_mu_body(NodeId mu, NodeId body) {
  std::get<TypeNode::Mu>(nodes_.at(mu).payload).body = body;
}

NodeId TypeStore::find(NodeId id) {
  NodeId root = id;
  while (nodes_[root].parent != root) root = nodes_[root].parent;
  while (nodes_[id].parent != root) {
    NodeId next = nodes_[id].parent;
    nodes_[id].parent = root;
    id = next;
  }
  return root;
}

void TypeStore::merge(NodeId keep, NodeId absorb) {
  NodeId k = find(keep);
  NodeId a = find(absorb);
  if (k == a) return;
  if (k == canonical_dyn_ || a == canonical_dyn_) {
    throw std::logic_error("the canonical dynamic node must be copied before merging");
  }
  nodes_[a].parent = k;
}

void TypeStore::set_numeric(NodeId var) {
  auto* v = std::get_if<TypeNode::Var>(&nodes_[find(var)].payload);
  if (v) v->numeric = true;
}

bool TypeStore::is_numeric(NodeId id) {
  auto* v = nodes_[find(id)].as<TypeNode::Var>();
  return v && v->numeric;
}

void TypeStore::mark_visited(NodeId id) {
  NodeId r = find(id);
  if (!nodes_[r].visited) {
    nodes_[r].visited = true;
    visited_.push_back(r);
  }
}

bool TypeStore::was_visited(NodeId id) { return nodes_[find(id)].visited; }

void TypeStore::clear_visited() {
  for (NodeId id : visited_) nodes_[id].visited = false;
  visited_.clear();
}

NodeId TypeStore::intern(const SurfaceType& type, std::map<std::string, NodeId>* vars) {
  std::map<std::string, NodeId> local;
  return intern_rec(type, vars ? *vars : local);
}

NodeId TypeStore::intern_rec(const SurfaceType& t, std::map<std::string, NodeId>& vars) {
  if (auto* v = t.as<SurfaceType::Var>()) {
    auto it = vars.find(v->name);
    if (it != vars.end()) return it->second;
    NodeId id = fresh_var();
    vars.emplace(v->name, id);
    return id;
  }
  if (auto* c = t.as<SurfaceType::Con>()) {
    if (c->name == "List" && c->args.size() == 1) {
      return intern_list(intern_rec(*c->args[0], vars));
    }
    NodeId id = ctor(c->name);
    for (const auto& arg : c->args) id = app(id, intern_rec(*arg, vars));
    return id;
  }
  if (auto* a = t.as<SurfaceType::Arrow>()) {
    NodeId d = intern_rec(*a->domain, vars);
    return arrow(d, intern_rec(*a->codomain, vars));
  }
  if (auto* r = t.as<SurfaceType::Record>()) return record(intern_rec(*r->row, vars));
  if (auto* r = t.as<SurfaceType::Variant>()) return variant(intern_rec(*r->row, vars));
  if (auto* f = t.as<SurfaceType::RowField>()) {
    NodeId ty = intern_rec(*f->type, vars);
    return field(f->label, ty, intern_rec(*f->tail, vars));
  }
  if (t.is<SurfaceType::EmptyRow>()) return empty_row();
  if (auto* m = t.as<SurfaceType::Mu>()) {
    NodeId mu = new_mu();
    auto saved = vars.find(m->var);
    std::optional<NodeId> shadowed;
    if (saved != vars.end()) shadowed = saved->second;
    vars[m->var] = mu;
    NodeId body = intern_rec(*m->body, vars);
    if (shadowed) {
      vars[m->var] = *shadowed;
    } else {
      vars.erase(m->var);
    }
    set_mu_body(mu, body);
    return mu;
  }
  return canonical_dyn_;
}

NodeId TypeStore::intern_list(NodeId element) {
  NodeId mu = new_mu();
  NodeId cons = record(field("head", element, field("tail", mu, empty_row())));
  NodeId nil = record(empty_row());
  NodeId body = variant(field("Nil", nil, field("Cons", cons, empty_row())));
  set_mu_body(mu, body);
  return mu;
}

bool TypeStore::reaches_canonical_dyn(NodeId id) { return reaches_dyn(id, false); }

bool TypeStore::reaches_dyn(NodeId id, bool any) {
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> work{id};
  while (!work.empty()) {
    NodeId r = find(work.back());
    work.pop_back();
    if (r == canonical_dyn_) return true;
    if (any && nodes_[r].is<TypeNode::Dyn>()) return true;
    if (!seen.insert(r).second) continue;
    const auto& p = nodes_[r].payload;
    if (auto* a = std::get_if<TypeNode::App>(&p)) {
      work.push_back(a->op);
      work.push_back(a->arg);
    } else if (auto* f = std::get_if<TypeNode::RowField>(&p)) {
      work.push_back(f->type);
      work.push_back(f->tail);
    } else if (auto* m = std::get_if<TypeNode::Mu>(&p)) {
      work.push_back(m->body);
    }
  }
  return false;
}

NodeId TypeStore::copy_dyn(NodeId id) {
  std::unordered_map<NodeId, NodeId> open_mus;
  return copy_rec(id, open_mus, false);
}

NodeId TypeStore::copy_every_dyn(NodeId id) {
  std::unordered_map<NodeId, NodeId> open_mus;
  return copy_rec(id, open_mus, true);
}

NodeId TypeStore::copy_rec(NodeId id, std::unordered_map<NodeId, NodeId>& open_mus, bool any) {
  NodeId r = find(id);
  if (r == canonical_dyn_ || (any && nodes_[r].is<TypeNode::Dyn>())) return new_dyn();
  if (auto it = open_mus.find(r); it != open_mus.end()) return it->second;
  if (!reaches_dyn(r, any)) return r;
  // Copy the payload by value: add() may reallocate nodes_.
  TypeNode::Payload p = nodes_[r].payload;
  if (auto* a = std::get_if<TypeNode::App>(&p)) {
    NodeId op = copy_rec(a->op, open_mus, any);
    return app(op, copy_rec(a->arg, open_mus, any));
  }
  if (auto* f = std::get_if<TypeNode::RowField>(&p)) {
    NodeId ty = copy_rec(f->type, open_mus, any);
    return field(f->label, ty, copy_rec(f->tail, open_mus, any));
  }
  if (auto* m = std::get_if<TypeNode::Mu>(&p)) {
    NodeId mu = new_mu();
    open_mus.emplace(r, mu);
    NodeId body = copy_rec(m->body, open_mus, any);
    open_mus.erase(r);
    set_mu_body(mu, body);
    return mu;
  }
  return r;
}

bool TypeStore::occurs(NodeId var, NodeId id) {
  NodeId target = find(var);
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> work{id};
  while (!work.empty()) {
    NodeId r = find(work.back());
    work.pop_back();
    if (r == target) return true;
    if (!seen.insert(r).second) continue;
    const auto& p = nodes_[r].payload;
    if (auto* a = std::get_if<TypeNode::App>(&p)) {
      work.push_back(a->op);
      work.push_back(a->arg);
    } else if (auto* f = std::get_if<TypeNode::RowField>(&p)) {
      work.push_back(f->type);
      work.push_back(f->tail);
    } else if (auto* m = std::get_if<TypeNode::Mu>(&p)) {
      work.push_back(m->body);
    }
  }
  return false;
}

bool TypeStore::spine(NodeId id, std::string* name, std::vector<NodeId>* args) {
  NodeId r = find(id);
  std::vector<NodeId> collected;
  while (auto* a = nodes_[r].as<TypeNode::App>()) {
    collected.push_back(a->arg);
    r = find(a->op);
  }
  auto* c = nodes_[r].as<TypeNode::Ctor>();
  if (!c) return false;
  if (name) *name = c->name;
  if (args) args->assign(collected.rbegin(), collected.rend());
  return true;
}

bool TypeStore::is_arrow(NodeId id, NodeId* domain, NodeId* codomain) {
  std::string name;
  std::vector<NodeId> args;
  if (!nodes_[find(id)].is<TypeNode::App>() || !spine(id, &name, &args)) return false;
  if (name != ctor_names::kArrow || args.size() != 2) return false;
  if (domain) *domain = args[0];
  if (codomain) *codomain = args[1];
  return true;
}

namespace {

bool mentions_var(const SurfaceType& t, const std::string& name) {
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, SurfaceType::Var>) {
          return n.name == name;
        } else if constexpr (std::is_same_v<N, SurfaceType::Con>) {
          return std::any_of(n.args.begin(), n.args.end(),
                             [&](const TypeRef& a) { return mentions_var(*a, name); });
        } else if constexpr (std::is_same_v<N, SurfaceType::Arrow>) {
          return mentions_var(*n.domain, name) || mentions_var(*n.codomain, name);
        } else if constexpr (std::is_same_v<N, SurfaceType::Record> ||
                             std::is_same_v<N, SurfaceType::Variant>) {
          return mentions_var(*n.row, name);
        } else if constexpr (std::is_same_v<N, SurfaceType::RowField>) {
          return mentions_var(*n.type, name) || mentions_var(*n.tail, name);
        } else if constexpr (std::is_same_v<N, SurfaceType::Mu>) {
          return n.var != name && mentions_var(*n.body, name);
        } else {
          return false;
        }
      },
      t.node);
}

// Collects the fields of a closed row, or returns false.
bool closed_fields(const TypeRef& row, std::map<std::string, TypeRef>* out) {
  const SurfaceType* cur = row.get();
  while (auto* f = cur->as<SurfaceType::RowField>()) {
    if (!out->emplace(f->label, f->type).second) return false;
    cur = f->tail.get();
  }
  return cur->is<SurfaceType::EmptyRow>();
}

// Recognises mu a. [Nil : {} | Cons : {head : t; tail : a}] and returns t.
TypeRef list_element(const SurfaceType& t) {
  auto* m = t.as<SurfaceType::Mu>();
  if (!m) return nullptr;
  auto* v = m->body->as<SurfaceType::Variant>();
  std::map<std::string, TypeRef> arms;
  if (!v || !closed_fields(v->row, &arms) || arms.size() != 2) return nullptr;
  auto nil = arms.find("Nil");
  auto cons = arms.find("Cons");
  if (nil == arms.end() || cons == arms.end()) return nullptr;
  auto* nil_rec = nil->second->as<SurfaceType::Record>();
  if (!nil_rec || !nil_rec->row->is<SurfaceType::EmptyRow>()) return nullptr;
  auto* cons_rec = cons->second->as<SurfaceType::Record>();
  std::map<std::string, TypeRef> cells;
  if (!cons_rec || !closed_fields(cons_rec->row, &cells) || cells.size() != 2) return nullptr;
  auto head = cells.find("head");
  auto tail = cells.find("tail");
  if (head == cells.end() || tail == cells.end()) return nullptr;
  auto* tail_var = tail->second->as<SurfaceType::Var>();
  if (!tail_var || tail_var->name != m->var) return nullptr;
  if (mentions_var(*head->second, m->var)) return nullptr;
  return head->second;
}

class Resolver {
 public:
  Resolver(TypeStore& store, TypeNamer& namer, ResolveOptions options)
      : store_(store), namer_(namer), options_(options) {}

  TypeRef go(NodeId id) {
    NodeId r = store_.find(id);
    // Cycles are closed at the mu node so an unrolled body prints unrolled.
    // Any other node is let through once more before it is closed.
    auto seen = std::count(stack_.begin(), stack_.end(), r);
    if (seen > 0 && (store_.node(r).is<TypeNode::Mu>() || seen > 1)) {
      std::string& name = cycle_names_[r];
      if (name.empty()) name = namer_.fresh();
      return types::var(name);
    }
    const TypeNode& node = store_.node(r);
    if (node.is<TypeNode::Var>()) return types::var(namer_.name_for(r));
    if (node.is<TypeNode::Dyn>()) return types::dyn();
    if (auto* c = node.as<TypeNode::Ctor>()) return types::con(c->name);
    if (node.is<TypeNode::EmptyRow>()) return types::empty_row();

    stack_.push_back(r);
    TypeRef out;
    if (node.is<TypeNode::App>()) {
      out = application(r);
    } else if (auto* f = node.as<TypeNode::RowField>()) {
      std::string label = f->label;
      NodeId type = f->type;
      NodeId tail = f->tail;
      TypeRef resolved = go(type);
      out = types::field(label, resolved, go(tail));
    } else if (auto* m = node.as<TypeNode::Mu>()) {
      out = go(m->body);
    }
    stack_.pop_back();

    if (auto it = cycle_names_.find(r); it != cycle_names_.end()) {
      out = types::mu(it->second, out);
      cycle_names_.erase(it);
    }
    if (options_.fold_lists) {
      if (TypeRef element = list_element(*out)) out = types::con("List", {element});
    }
    return out;
  }

 private:
  TypeRef application(NodeId r) {
    std::string name;
    std::vector<NodeId> args;
    if (!store_.spine(r, &name, &args)) {
      // Only constructor spines are ever built; keep a readable fallback.
      auto* a = store_.node(r).as<TypeNode::App>();
      return types::con("App", {go(a->op), go(a->arg)});
    }
    std::vector<TypeRef> resolved;
    for (NodeId a : args) resolved.push_back(go(a));
    if (name == ctor_names::kArrow && resolved.size() == 2) {
      return types::arrow(resolved[0], resolved[1]);
    }
    if (name == ctor_names::kRecord && resolved.size() == 1) return types::record(resolved[0]);
    if (name == ctor_names::kVariant && resolved.size() == 1) return types::variant(resolved[0]);
    return types::con(name, std::move(resolved));
  }

  TypeStore& store_;
  TypeNamer& namer_;
  ResolveOptions options_;
  std::vector<NodeId> stack_;
  std::unordered_map<NodeId, std::string> cycle_names_;
};

}  // namespace

TypeRef TypeStore::resolve(NodeId id, ResolveOptions options) {
  TypeNamer namer;
  return resolve(id, namer, options);
}

TypeRef TypeStore::resolve(NodeId id, TypeNamer& namer, ResolveOptions options) {
  Resolver resolver(*this, namer, options);
  return resolver.go(id);
}

std::string TypeStore::show(NodeId id) {
  return pretty_type(*resolve(id, ResolveOptions{true}));
}

}  // namespace gradual
