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

#include <doctest.h>

#include <string>

#include "gradual/runtime.h"
#include "support/properties.h"
#include "support/term_gen.h"
#include "support/type_oracles.h"

namespace gradual {
namespace {

struct Checker {
  TypeStore store;
  Builtins env = builtins(store);
  Inferencer inferencer{store};
  InferOutcome last;

  std::string type(const std::string& source) {
    last = inferencer.infer_program(env.types, parse_term(source));
    return store.show(last.type);
  }

  TypeError::Kind failure(const std::string& source) {
    try {
      type(source);
    } catch (const TypeError& e) {
      return e.kind();
    }
    FAIL("program unexpectedly type checked: " << source);
    return TypeError::Kind::kShape;
  }
};

TEST_CASE("incr infers Int -> Int and its annotation takes precedence") {
  Checker c;
  CHECK(c.type("let incr x = x + 1 in incr") == "Int -> Int");
  CHECK(c.type("let incr x = x + 1 in incr : ? -> Int") == "? -> Int");
  CHECK(c.type("let incr x = x + 1 in incr 41") == "Int");
}

TEST_CASE("an annotated function flows into a higher-order call") {
  Checker c;
  CHECK(c.type("let incr x = x + 1 in (fun f -> f 1) (incr : ? -> Int)") == "Int");
  CHECK(c.type("let incr x = x + 1 in (fun f -> f \"one\") (incr : ? -> Int)") == "Int");
}

TEST_CASE("static mismatches report inconsistent types") {
  Checker c;
  CHECK(c.failure("let incr x = x + 1 in incr \"hi\"") == TypeError::Kind::kInconsistent);
  try {
    c.type("1 \"s\"");
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(std::string(e.what()).find("inconsistent types") != std::string::npos);
    CHECK(e.span().begin == 0);
  }
}

TEST_CASE("unbound variables and ill-kinded annotations are rejected") {
  Checker c;
  CHECK(c.failure("fun x -> y") == TypeError::Kind::kUnbound);
  CHECK(c.failure("(1 : Obs)") == TypeError::Kind::kKind);
  CHECK(c.failure("let rec f = 1 in f") == TypeError::Kind::kShape);
}

TEST_CASE("let polymorphism and the value restriction") {
  Checker c;
  CHECK(c.type("let id = fun x -> x in {a = id 1, b = id \"s\"}") == "{a : Int; b : String}");
  CHECK(c.type("fun x -> x") == "a -> a");
  CHECK(c.failure("let f = (fun x -> x) (fun y -> y) in {a = f 1, b = f \"s\"}") ==
        TypeError::Kind::kInconsistent);
  CHECK(c.failure("fun g -> {a = g 1, b = g \"s\"}") == TypeError::Kind::kInconsistent);
}

TEST_CASE("let rec is monomorphic inside its own body") {
  Checker c;
  CHECK(c.type("let rec f = fun x -> f x in f") == "a -> b");
  CHECK(c.failure("let rec f = fun x -> {a = f 1, b = f \"s\"} in f") ==
        TypeError::Kind::kInconsistent);
}

TEST_CASE("records, projections, injections and closed matches") {
  Checker c;
  CHECK(c.type("fun r -> r.a") == "{a : a | b} -> a");
  CHECK(c.type("{a = 1, b = \"x\"}.b") == "String");
  CHECK(c.type("A 1") == "[A : Int | a]");
  CHECK(c.type("fun v -> match v with A x -> x | B y -> y") == "[A : a; B : a] -> a");
  CHECK(c.failure("match C 1 with A x -> x | B y -> y") == TypeError::Kind::kInconsistent);
  CHECK(c.failure("{a = 1}.b") == TypeError::Kind::kInconsistent);
}

TEST_CASE("arithmetic operands default to Int and accept doubles and observables") {
  Checker c;
  CHECK(c.type("fun x -> x + x") == "Int -> Int");
  CHECK(c.type("1.5 + 2.0") == "Double");
  CHECK(c.type("const 1.0 + const 2.0") == "Obs Double");
  CHECK(c.type("(1 : ?) + 2") == "Int");
  CHECK(c.failure("\"a\" + \"b\"") == TypeError::Kind::kInconsistent);
  CHECK(c.failure("1 + 2.0") == TypeError::Kind::kInconsistent);
  CHECK(c.type("let double x = x * 2.0 in double") == "Double -> Double");
}

TEST_CASE("each use of an annotated dyn gets its own copy") {
  Checker c;
  CHECK(c.type("let d = (1 : ?) in {a = concat d \"x\", b = int_to_double d}") ==
        "{a : String; b : Double}");
  CHECK(c.type("fun (g : ?) -> {a = g 1, b = g \"s\"}") == "? -> {a : ?; b : ?}");
}

TEST_CASE("dyn obligations and cast plans") {
  Checker c;
  c.type("let incr x = x + 1 in (incr : ? -> Int) 41");
  CHECK_FALSE(c.last.obligations.empty());
  CHECK_FALSE(c.last.casts.empty());
  c.type("let incr x = x + 1 in incr 41");
  CHECK(c.last.obligations.empty());
  CHECK(c.last.casts.empty());
}

TEST_CASE("generalize and instantiate") {
  Checker c;
  TypeStore& s = c.store;
  Scheme scheme = builtin_scheme(s, "a -> b -> a");
  CHECK(scheme.quantified.size() == 2);
  NodeId one = c.inferencer.instantiate(scheme);
  NodeId two = c.inferencer.instantiate(scheme);
  CHECK(s.find(one) != s.find(two));
  CHECK(testing::alpha_equivalent(*s.resolve(one), *parse_type("x -> y -> x")));
  Scheme regen = c.inferencer.generalize(TypeEnv{}, one);
  CHECK(regen.quantified.size() == 2);
  // A variable mentioned by the environment stays monomorphic.
  NodeId a = s.fresh_var();
  TypeEnv env = TypeEnv{}.extend("x", Scheme{{}, a});
  CHECK(c.inferencer.generalize(env, s.arrow(a, s.fresh_var())).quantified.size() == 1);
}

TEST_CASE("dynamic-by-default annotates binders and is idempotent") {
  TermRef t = parse_term("let f = fun x -> x + 1 in f 2");
  TermRef once = annotate_dynamic_by_default(t);
  CHECK(pretty_term(*once) == "let f = ((fun x -> (x : ?) + 1) : ?) in f 2");
  CHECK(structurally_equal(*annotate_dynamic_by_default(once), *once));
  testing::TermGen gen(7);
  for (int i = 0; i < 300; ++i) {
    TermRef p = gen.program(4);
    TermRef a = annotate_dynamic_by_default(p);
    CHECK(structurally_equal(*annotate_dynamic_by_default(a), *a));
  }
}

TEST_CASE("dynamic-by-default defers the incr mismatch to run time") {
  Checker c;
  TermRef t = parse_term("let incr x = x + 1 in incr \"hi\"");
  CHECK_THROWS_AS(c.inferencer.infer_program(c.env.types, t), TypeError);
  CHECK_NOTHROW(c.inferencer.infer_program(c.env.types, annotate_dynamic_by_default(t)));
}

TEST_CASE("property: agrees with Algorithm W on dyn-free programs") {
  auto r = testing::check_conservativity(400, 11);
  INFO(r.first_violation);
  CHECK(r.violations == 0);
  CHECK(r.accepted > r.checked / 10);
}

TEST_CASE("property: weakening an annotation never adds a static error") {
  auto r = testing::check_monotonicity(200, 12);
  INFO(r.first_violation);
  CHECK(r.checked == 200);
  CHECK(r.violations == 0);
}

}  // namespace
}  // namespace gradual
