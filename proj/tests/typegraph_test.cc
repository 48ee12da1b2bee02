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

#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "support/generators.h"
#include "support/type_oracles.h"

namespace gradual {
namespace {

using testing::alpha_equivalent;

NodeId intern_text(TypeStore& store, const char* text) {
  TypeRef t = parse_type(text);
  kind_check(*t);
  return store.intern(*t);
}

// Counts paths from `id` that end in a Dyn node, unfolding the tree view.
int dyn_occurrences(TypeStore& store, NodeId id, bool canonical_only,
                    std::vector<NodeId>& open) {
  NodeId r = store.find(id);
  if (std::find(open.begin(), open.end(), r) != open.end()) return 0;
  const TypeNode& n = store.node(r);
  if (auto* d = n.as<TypeNode::Dyn>()) return !canonical_only || d->canonical ? 1 : 0;
  open.push_back(r);
  int total = 0;
  if (auto* a = n.as<TypeNode::App>()) {
    NodeId op = a->op, arg = a->arg;
    total = dyn_occurrences(store, op, canonical_only, open) +
            dyn_occurrences(store, arg, canonical_only, open);
  } else if (auto* f = n.as<TypeNode::RowField>()) {
    NodeId ty = f->type, tail = f->tail;
    total = dyn_occurrences(store, ty, canonical_only, open) +
            dyn_occurrences(store, tail, canonical_only, open);
  } else if (auto* m = n.as<TypeNode::Mu>()) {
    total = dyn_occurrences(store, m->body, canonical_only, open);
  }
  open.pop_back();
  return total;
}

int dyn_occurrences(TypeStore& store, NodeId id, bool canonical_only = false) {
  std::vector<NodeId> open;
  return dyn_occurrences(store, id, canonical_only, open);
}

TEST_CASE("kind_check: arrows, rows and constructor arity") {
  CHECK(kind_check(*parse_type("Int -> Int")) == Kind::star());
  CHECK(kind_check(*parse_type("x : Int; eps")) == Kind::row());
  CHECK(kind_check(*parse_type("Obs Double -> ? -> ?")) == Kind::star());
  CHECK(kind_check(*parse_type("Obs")) == Kind::arrow(Kind::star(), Kind::star()));
  CHECK(kind_check(*parse_type("{x : Int | r}")) == Kind::star());
  CHECK(to_string(builtin_kinds().at("->")) == "* => * => *");
  CHECK(to_string(builtin_kinds().at("Pi")) == "row => *");
}

TEST_CASE("kind_check: rejects ill-kinded types") {
  CHECK_THROWS_AS(kind_check(*parse_type("Pi Int")), KindError);
  CHECK_THROWS_AS(kind_check(*parse_type("Sigma Int")), KindError);
  CHECK_THROWS_AS(kind_check(*parse_type("Frobnicate")), KindError);
  CHECK_THROWS_AS(kind_check(*parse_type("Int Int")), KindError);
  CHECK_THROWS_AS(kind_check(*parse_type("Obs (x : Int; eps)")), KindError);
  CHECK_THROWS_AS(kind_check(*parse_type("{x : Int | ?}")), KindError);
  // One variable cannot be both a type and a row.
  CHECK_THROWS_AS(kind_check(*parse_type("r -> {x : Int | r}")), KindError);
}

TEST_CASE("kind_check: mu binders must be guarded") {
  CHECK_THROWS_AS(kind_check(*parse_type("mu a. a")), KindError);
  CHECK_THROWS_AS(kind_check(*parse_type("mu a. mu b. a")), KindError);
  CHECK_NOTHROW(kind_check(*parse_type("mu a. Int -> a")));
  CHECK_NOTHROW(kind_check(*parse_type("mu a. mu a. Int -> a")));
}

TEST_CASE("intern: annotation with dyn shares the canonical node") {
  TypeStore store;
  NodeId t = intern_text(store, "? -> Int");
  std::string name;
  std::vector<NodeId> args;
  REQUIRE(store.spine(t, &name, &args));
  CHECK(name == "->");
  REQUIRE(args.size() == 2);
  CHECK(store.find(args[0]) == store.canonical_dyn());
  CHECK(store.node(store.find(args[1])).as<TypeNode::Ctor>()->name == "Int");

  NodeId u = intern_text(store, "? -> ?");
  NodeId d, c;
  REQUIRE(store.is_arrow(u, &d, &c));
  CHECK(store.find(d) == store.canonical_dyn());
  CHECK(store.find(c) == store.canonical_dyn());
}

TEST_CASE("intern: variables are shared within one map") {
  TypeStore store;
  std::map<std::string, NodeId> vars;
  NodeId t = store.intern(*parse_type("a -> a"), &vars);
  NodeId d, c;
  REQUIRE(store.is_arrow(t, &d, &c));
  CHECK(store.find(d) == store.find(c));
  NodeId again = store.intern(*parse_type("a"), &vars);
  CHECK(store.find(again) == store.find(d));
  NodeId other = store.intern(*parse_type("a"));
  CHECK(store.find(other) != store.find(d));
}

TEST_CASE("intern: List expands to its recursive definition") {
  TypeStore store;
  NodeId list = intern_text(store, "List Int");
  REQUIRE(store.node(store.find(list)).is<TypeNode::Mu>());
  TypeRef expected = parse_type(
      "mu a. Sigma (Nil : Pi eps; Cons : Pi (head : Int; tail : a; eps); eps)");
  TypeRef back = store.resolve(list);
  CHECK(alpha_equivalent(*back, *expected));
  CHECK(store.show(list) == "List Int");
  CHECK(store.show(intern_text(store, "List (List ?)")) == "List (List ?)");
}

TEST_CASE("intern: mu back-patches the binder to the recursive node") {
  TypeStore store;
  NodeId t = intern_text(store, "mu a. Int -> a");
  NodeId d, c;
  REQUIRE(store.is_arrow(store.node(store.find(t)).as<TypeNode::Mu>()->body, &d, &c));
  CHECK(store.find(c) == store.find(t));
  CHECK(alpha_equivalent(*store.resolve(t), *parse_type("mu b. Int -> b")));
}

TEST_CASE("fresh_var and new_dyn: identities are fresh") {
  TypeStore store;
  NodeId a = store.fresh_var();
  NodeId b = store.fresh_var();
  CHECK(a != b);
  CHECK(store.node(a).as<TypeNode::Var>()->id != store.node(b).as<TypeNode::Var>()->id);
  NodeId d1 = store.new_dyn();
  NodeId d2 = store.new_dyn();
  CHECK(d1 != store.canonical_dyn());
  CHECK(d1 != d2);
  CHECK_FALSE(store.node(d1).as<TypeNode::Dyn>()->canonical);
  CHECK(store.node(store.canonical_dyn()).as<TypeNode::Dyn>()->canonical);
}

TEST_CASE("find and merge: the kept side stays representative") {
  TypeStore store;
  NodeId integer = store.ctor("Int");
  NodeId alpha = store.fresh_var();
  store.merge(integer, alpha);
  CHECK(store.find(alpha) == integer);
  CHECK(store.find(store.find(alpha)) == store.find(alpha));

  std::size_t before = store.size();
  store.merge(integer, integer);
  CHECK(store.find(integer) == integer);
  CHECK(store.size() == before);

  NodeId beta = store.fresh_var();
  NodeId dyn = store.new_dyn();
  store.merge(dyn, beta);
  CHECK(store.find(beta) == dyn);
  NodeId str = store.ctor("String");
  store.merge(str, dyn);
  CHECK(store.find(beta) == str);
  CHECK(store.find(dyn) == str);
}

TEST_CASE("merge: the canonical dyn node is never merged") {
  TypeStore store;
  CHECK_THROWS_AS(store.merge(store.canonical_dyn(), store.fresh_var()), std::logic_error);
  CHECK_THROWS_AS(store.merge(store.ctor("Int"), store.canonical_dyn()), std::logic_error);
}

TEST_CASE("property: union-find agrees with a partition oracle") {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    TypeStore store;
    const int n = 24;
    std::vector<NodeId> ids;
    for (int i = 0; i < n; ++i) ids.push_back(store.fresh_var());
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int step = 0; step < 30; ++step) {
      int i = pick(rng), j = pick(rng);
      store.merge(ids[i], ids[j]);
      int from = label[j], to = label[i];
      for (int& l : label) {
        if (l == from) l = to;
      }
      CHECK(store.find(ids[j]) == store.find(ids[i]));
    }
    for (int i = 0; i < n; ++i) {
      CHECK(store.find(store.find(ids[i])) == store.find(ids[i]));
      for (int j = 0; j < n; ++j) {
        CHECK((store.find(ids[i]) == store.find(ids[j])) == (label[i] == label[j]));
      }
    }
  }
}

TEST_CASE("copy_dyn: dyn-free graphs are shared") {
  TypeStore store;
  NodeId t = intern_text(store, "Int");
  CHECK(store.copy_dyn(t) == store.find(t));
  NodeId arrow = intern_text(store, "Int -> String");
  CHECK(store.copy_dyn(arrow) == store.find(arrow));
}

TEST_CASE("copy_dyn: each dyn occurrence gets its own node") {
  TypeStore store;
  NodeId t = intern_text(store, "? -> Int");
  NodeId copy = store.copy_dyn(t);
  NodeId d, c, od, oc;
  REQUIRE(store.is_arrow(copy, &d, &c));
  REQUIRE(store.is_arrow(t, &od, &oc));
  CHECK(store.find(d) != store.canonical_dyn());
  CHECK(store.node(store.find(d)).is<TypeNode::Dyn>());
  CHECK(store.find(c) == store.find(oc));

  NodeId both = intern_text(store, "? -> ?");
  NodeId bd, bc;
  REQUIRE(store.is_arrow(store.copy_dyn(both), &bd, &bc));
  CHECK(store.find(bd) != store.find(bc));
}

TEST_CASE("copy_dyn: cycles survive the copy") {
  TypeStore store;
  NodeId list = intern_text(store, "List ?");
  NodeId copy = store.copy_dyn(list);
  CHECK(copy != store.find(list));
  CHECK_FALSE(store.reaches_canonical_dyn(copy));
  CHECK(alpha_equivalent(*store.resolve(copy), *store.resolve(list)));
  CHECK(store.show(copy) == "List ?");
}

TEST_CASE("property: copy_dyn preserves shape and dyn count, drops canonical dyns") {
  testing::TypeGen gen(3);
  for (int i = 0; i < 500; ++i) {
    TypeStore store;
    TypeRef t = gen.star(4);
    NodeId id = store.intern(*t);
    int before = dyn_occurrences(store, id);
    NodeId copy = store.copy_dyn(id);
    INFO(pretty_type(*t));
    CHECK(dyn_occurrences(store, copy) == before);
    CHECK(dyn_occurrences(store, copy, true) == 0);
    CHECK(alpha_equivalent(*store.resolve(copy), *t));
  }
}

TEST_CASE("resolve: round trips through intern") {
  TypeStore store;
  CHECK(pretty_type(*store.resolve(intern_text(store, "Int -> Int"))) == "Int -> Int");
  CHECK(pretty_type(*store.resolve(intern_text(store, "? -> Int"))) == "? -> Int");
  CHECK(pretty_type(*store.resolve(intern_text(store, "x -> y -> x"))) == "a -> b -> a");
}

TEST_CASE("property: resolve inverts intern on acyclic types") {
  testing::TypeGen gen(5);
  for (int i = 0; i < 1000; ++i) {
    TypeStore store;
    TypeRef t = gen.star(4);
    kind_check(*t);
    INFO(pretty_type(*t));
    CHECK(alpha_equivalent(*store.resolve(store.intern(*t)), *t));
  }
}

TEST_CASE("resolve: a shared namer keeps names stable") {
  TypeStore store;
  NodeId a = store.fresh_var();
  NodeId b = store.fresh_var();
  TypeNamer namer;
  CHECK(pretty_type(*store.resolve(store.arrow(a, b), namer)) == "a -> b");
  CHECK(pretty_type(*store.resolve(b, namer)) == "b");
}

}  // namespace
}  // namespace gradual
