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


// Random closed programs and the annotation rewrites used by the property
// tests.

#ifndef GRADUAL_TESTS_SUPPORT_TERM_GEN_H_
#define GRADUAL_TESTS_SUPPORT_TERM_GEN_H_

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gradual/syntax.h"

namespace gradual::testing {

// Builtins with dyn-free, non-arithmetic signatures that every generated
// program may use.
const std::vector<std::pair<std::string, std::string>>& generator_builtins();

class TermGen {
 public:
  explicit TermGen(unsigned seed) : rng_(seed) {}

  // A closed program over generator_builtins().
  TermRef program(int depth);

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937& rng() { return rng_; }

 private:
  TermRef term(int depth);
  TermRef leaf();
  TermRef function(int depth);
  std::string fresh();

  std::mt19937 rng_;
  std::vector<std::string> scope_;
  int counter_ = 0;
};

// Rebuilds `t` with each direct child replaced by `f(child)`.
TermRef map_children(const TermRef& t, const std::function<TermRef(const TermRef&)>& f);

// Rebuilds `t`, wrapping each subterm for which `choose` returns a type in an
// annotation with that type. Existing annotations are left alone.
TermRef annotate(const TermRef& t, const std::function<TypeRef(const Term&)>& choose);

// Annotation terms in pre-order.
std::vector<const Term*> annotations(const TermRef& t);

// Number of star-kinded positions in a type, the root included.
int star_positions(const TypeRef& t);

// Replaces the `position`-th star position of the annotation `target` with `?`.
TermRef weaken(const TermRef& t, const Term* target, int position);

// Round trip through the printer and parser, which attaches source spans.
TermRef with_spans(const TermRef& t);

}  // namespace gradual::testing

#endif  // GRADUAL_TESTS_SUPPORT_TERM_GEN_H_
