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

#include <doctest.h>

#include <map>
#include <sstream>

#include "support/generators.h"
#include "support/subst_unify.h"
#include "support/type_oracles.h"

namespace gradual {
namespace {

struct Fixture {
  TypeStore store;
  Unifier unifier{store};
  std::map<std::string, NodeId> vars;

  NodeId type(const char* text) { return type(parse_type(text)); }
  NodeId type(const TypeRef& t) {
    kind_check(*t);
    return store.intern(*t, &vars);
  }
  bool accepts(NodeId a, NodeId b) {
    try {
      unifier.unify(a, b);
      return true;
    } catch (const UnifyError&) {
      return false;
    }
  }
  UnifyError::Kind failure(NodeId a, NodeId b) {
    try {
      unifier.unify(a, b);
    } catch (const UnifyError& e) {
      return e.kind();
    }
    FAIL("unification unexpectedly succeeded");
    return UnifyError::Kind::kConstructorClash;
  }
};

std::vector<int> case_sequence(Unifier& unifier, NodeId a, NodeId b) {
  std::vector<int> cases;
  unifier.add_observer([&](const UnifyStep& s) { cases.push_back(s.case_number); });
  unifier.unify(a, b);
  return cases;
}

TEST_CASE("unify: the classic arrow example joins alpha, beta and Int") {
  Fixture f;
  NodeId lhs = f.type("a -> a");
  NodeId rhs = f.type("Int -> b");
  f.unifier.unify(lhs, rhs);
  NodeId integer = f.store.ctor("Int");
  CHECK(f.store.find(f.vars.at("a")) == integer);
  CHECK(f.store.find(f.vars.at("b")) == integer);
}

TEST_CASE("unify: constructors") {
  Fixture f;
  CHECK(f.accepts(f.type("Int"), f.type("Int")));
  CHECK(f.failure(f.type("Int"), f.type("String")) == UnifyError::Kind::kConstructorClash);
  CHECK(f.failure(f.type("Obs Int"), f.type("Obs String")) ==
        UnifyError::Kind::kConstructorClash);
  CHECK(f.failure(f.type("Obs Int"), f.type("Int -> Int")) ==
        UnifyError::Kind::kConstructorClash);
}

TEST_CASE("unify: error kinds and messages") {
  Fixture f;
  CHECK(f.failure(f.type("{x : Int}"), f.type("{y : Int}")) ==
        UnifyError::Kind::kMissingRowField);
  CHECK(f.failure(f.type("a"), f.type("a -> Int")) == UnifyError::Kind::kOccursViolation);
  CHECK(f.failure(f.type("x : Int; eps"), f.type("Int")) == UnifyError::Kind::kKindClash);
  try {
    f.unifier.unify(f.type("Int -> Int"), f.type("Int -> String"));
    FAIL("expected a clash");
  } catch (const UnifyError& e) {
    CHECK(std::string(e.what()) == "inconsistent types: Int and String");
  }
  // Two rows over one tail that disagree on labels must not loop.
  CHECK(f.failure(f.type("{x : Int | r}"), f.type("{y : Int | r}")) ==
        UnifyError::Kind::kMissingRowField);
}

TEST_CASE("unify: representative policy per merge") {
  Fixture f;
  NodeId alpha = f.store.fresh_var();
  NodeId beta = f.store.fresh_var();
  f.unifier.unify(alpha, beta);
  CHECK(f.store.find(alpha) == f.store.find(beta));
  CHECK(f.store.node(f.store.find(alpha)).is<TypeNode::Var>());

  NodeId dyn = f.store.new_dyn();
  f.unifier.unify(alpha, dyn);
  CHECK(f.store.find(alpha) == dyn);

  NodeId integer = f.store.ctor("Int");
  f.unifier.unify(dyn, integer);
  CHECK(f.store.find(alpha) == integer);
  CHECK(f.store.find(beta) == integer);

  NodeId gamma = f.store.fresh_var();
  f.unifier.unify(f.store.ctor("String"), gamma);
  CHECK(f.store.find(gamma) == f.store.ctor("String"));
}

TEST_CASE("unify: a row against dyn keeps the row") {
  Fixture f;
  NodeId row = f.type("x : Int; eps");
  std::vector<int> cases = case_sequence(f.unifier, row, f.store.canonical_dyn());
  CHECK(cases == std::vector<int>{6});
  CHECK(f.store.node(f.store.find(row)).is<TypeNode::RowField>());
}

TEST_CASE("unify: dyn inside a row goes through cases 8, 5 and 12") {
  Fixture f;
  std::vector<int> cases = case_sequence(f.unifier, f.type("x : ?; eps"), f.type("x : Int; eps"));
  CHECK(cases == std::vector<int>{8, 5, 12});
}

TEST_CASE("unify: dyn against an arrow splits into two fresh dyns") {
  Fixture f;
  NodeId arrow = f.type("a -> b");
  std::vector<NodeId> seen;
  f.unifier.add_observer([&](const UnifyStep& s) {
    if (s.case_number == 1 || s.case_number == 2) seen.push_back(s.case_number == 1 ? s.right : s.left);
  });
  std::vector<int> cases = case_sequence(f.unifier, f.store.canonical_dyn(), arrow);
  CHECK(cases == std::vector<int>{3, 1, 1});
  REQUIRE(seen.size() == 2);
  CHECK(seen[0] != seen[1]);
  CHECK(seen[0] != f.store.canonical_dyn());
  CHECK(f.store.node(f.store.find(f.vars.at("a"))).is<TypeNode::Dyn>());
  CHECK(f.store.find(f.vars.at("a")) != f.store.find(f.vars.at("b")));
}

TEST_CASE("unify: row rearrangement") {
  Fixture f;
  CHECK(f.accepts(f.type("{x : Int; y : String}"), f.type("{y : String; x : Int}")));
  CHECK(f.accepts(f.type("{x : Int; y : String | r}"), f.type("{y : String; x : Int | r}")));
  NodeId open = f.type("{x : Int | s}");
  CHECK(f.accepts(open, f.type("{y : String; x : Int}")));
  CHECK(testing::alpha_equivalent(*f.store.resolve(open), *parse_type("{x : Int; y : String}")));
  CHECK_FALSE(f.accepts(f.type("{x : Int; y : String}"), f.type("{y : String; x : Double}")));
  CHECK_FALSE(f.accepts(f.type("{x : Int; z : Int}"), f.type("{y : Int; x : Int}")));
}

TEST_CASE("unify: equi-recursive types") {
  Fixture f;
  CHECK(f.accepts(f.type("List Int"), f.type("List ?")));
  CHECK(f.failure(f.type("List Int"), f.type("List String")) ==
        UnifyError::Kind::kConstructorClash);
  CHECK(f.accepts(f.type("mu a. Int -> a"), f.type("mu b. Int -> Int -> b")));
  CHECK(f.accepts(f.type("mu a. {x : Int; y : a}"), f.type("mu b. {y : b; x : Int}")));
  CHECK_FALSE(f.accepts(f.type("mu a. Int -> a"), f.type("mu b. Int -> String -> b")));
  NodeId alpha = f.type("c");
  CHECK(f.accepts(alpha, f.type("List Double")));
  CHECK(f.store.show(alpha) == "List Double");
}

TEST_CASE("unify: the list trace starts with 10 and 11 and ends in 12") {
  Fixture f;
  NodeId lhs = f.type("List Int");
  NodeId rhs = f.type("List ?");
  std::ostringstream trace;
  f.unifier.add_observer(trace_printer(f.store, trace));
  std::vector<int> cases = case_sequence(f.unifier, lhs, rhs);
  INFO(trace.str());
  REQUIRE(cases.size() >= 6);
  CHECK(cases[0] == 10);
  CHECK(cases[1] == 11);
  CHECK(std::find(cases.begin(), cases.end(), 6) != cases.end());
  CHECK(cases.back() == 12);
  CHECK(trace.str().rfind("CASE 10: List Int ≃ List ?\n", 0) == 0);
}

TEST_CASE("maybe_copy_dyns: only sides reaching the canonical dyn are copied") {
  Fixture f;
  NodeId integer = f.type("Int");
  Constraint same = f.unifier.maybe_copy_dyns({integer, integer});
  CHECK(same.left == integer);
  CHECK(same.right == integer);

  NodeId lhs = f.type("? -> a");
  NodeId rhs = f.type("a -> t");
  Constraint c = f.unifier.maybe_copy_dyns({lhs, rhs});
  CHECK(c.left != lhs);
  CHECK(c.right == rhs);
  Constraint again = f.unifier.maybe_copy_dyns(c);
  CHECK(again.left == c.left);

  Constraint dyns =
      f.unifier.maybe_copy_dyns({f.store.canonical_dyn(), f.store.canonical_dyn()});
  CHECK(dyns.left != dyns.right);
  CHECK(dyns.left != f.store.canonical_dyn());
}

TEST_CASE("unify: no over-copying, alpha and tau stay joined") {
  Fixture f;
  f.unifier.unify(f.type("? -> a"), f.type("a -> t"));
  CHECK(f.store.find(f.vars.at("a")) == f.store.find(f.vars.at("t")));
}

TEST_CASE("unify: one annotation dyn meets Int and String through separate copies") {
  Fixture f;
  NodeId dyn = f.type("?");
  CHECK(f.accepts(dyn, f.store.canonical_dyn()));
  CHECK(f.accepts(dyn, f.type("Int")));
  CHECK(f.accepts(dyn, f.type("String")));
  CHECK(f.accepts(f.type("Int"), f.type("String")) == false);
  NodeId annotated = f.type("? -> Int");
  CHECK(f.accepts(annotated, f.type("Int -> Int")));
  CHECK(f.accepts(annotated, f.type("String -> Int")));
}

TEST_CASE("unify: numeric operands accept numbers, observables and dyn") {
  Fixture f;
  auto numeric = [&] {
    NodeId v = f.store.fresh_var();
    f.store.set_numeric(v);
    return v;
  };
  CHECK(f.accepts(numeric(), f.type("Int")));
  CHECK(f.accepts(numeric(), f.type("Double")));
  CHECK(f.accepts(numeric(), f.type("?")));
  CHECK_FALSE(f.accepts(numeric(), f.type("String")));
  CHECK_FALSE(f.accepts(numeric(), f.type("Obs String")));
  NodeId obs = f.type("Obs e");
  CHECK(f.accepts(numeric(), obs));
  CHECK(f.store.show(f.vars.at("e")) == "Double");

  NodeId a = numeric();
  NodeId b = f.store.fresh_var();
  CHECK(f.accepts(b, a));
  CHECK(f.store.is_numeric(b));
  CHECK_FALSE(f.accepts(b, f.type("String")));
}

TEST_CASE("property: unify agrees with the consistency oracle on small ground types") {
  std::vector<TypeRef> all = testing::enumerate_ground_types(3);
  REQUIRE(all.size() == 363);
  std::vector<TypeRef> small = testing::enumerate_ground_types(2);
  REQUIRE(small.size() == 18);
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  auto check_pair = [](const TypeRef& a, const TypeRef& b) {
    Fixture f;
    bool verdict = f.accepts(f.type(a), f.type(b));
    INFO(pretty_type(*a), "  vs  ", pretty_type(*b));
    CHECK(verdict == testing::consistent_oracle(*a, *b));
  };
  for (const auto& a : small) {
    for (const auto& b : all) check_pair(a, b);
  }
  for (int i = 0; i < 5000; ++i) check_pair(all[pick(rng)], all[pick(rng)]);
}

TEST_CASE("property: on dyn-free types unify matches syntactic unification") {
  testing::TypeGen gen(23, testing::TypeGen::Options{true, false, true});
  int agreed_success = 0;
  for (int i = 0; i < 3000; ++i) {
    TypeRef a = gen.star(3);
    TypeRef b = gen.below(3) == 0 ? a : gen.star(3);
    testing::SubstUnifier oracle;
    Fixture f;
    NodeId na = f.type(a);
    NodeId nb = f.type(b);
    bool expected = oracle.unify(a, b);
    bool actual = f.accepts(na, nb);
    INFO(pretty_type(*a), "  vs  ", pretty_type(*b));
    REQUIRE(actual == expected);
    if (actual) {
      ++agreed_success;
      TypeRef both = oracle.apply(types::arrow(a, b));
      CHECK(testing::alpha_equivalent(*f.store.resolve(f.store.arrow(na, nb)), *both));
    }
  }
  CHECK(agreed_success > 300);
}

TEST_CASE("property: the verdict does not depend on argument order") {
  testing::TypeGen gen(29);
  for (int i = 0; i < 3000; ++i) {
    TypeRef a = gen.star(3);
    TypeRef b = gen.star(3);
    Fixture f1;
    Fixture f2;
    INFO(pretty_type(*a), "  vs  ", pretty_type(*b));
    CHECK(f1.accepts(f1.type(a), f1.type(b)) == f2.accepts(f2.type(b), f2.type(a)));
  }
}

}  // namespace
}  // namespace gradual
