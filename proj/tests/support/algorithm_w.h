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


// Textbook substitution-based Algorithm W over the same term language, used
// as an oracle for the graph-based inferencer on dyn-free programs.

#ifndef GRADUAL_TESTS_SUPPORT_ALGORITHM_W_H_
#define GRADUAL_TESTS_SUPPORT_ALGORITHM_W_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gradual/syntax.h"
#include "support/subst_unify.h"

namespace gradual::testing {

class AlgorithmW {
 public:
  // Signatures of the free names a program may use; every type variable in
  // a signature is quantified.
  explicit AlgorithmW(const std::vector<std::pair<std::string, std::string>>& signatures);

  // The program's type, or nullopt when it does not type check.
  std::optional<TypeRef> infer(const TermRef& program);

 private:
  struct Scheme {
    std::set<std::string> quantified;
    TypeRef type;
  };
  using Env = std::map<std::string, Scheme>;

  TypeRef w(const Env& env, const Term& t);
  TypeRef instantiate(const Scheme& s);
  Scheme generalize(const Env& env, const TypeRef& t);
  TypeRef freshen(const TypeRef& t, std::map<std::string, TypeRef>& names);
  void expect(const TypeRef& a, const TypeRef& b);

  Env builtins_;
  SubstUnifier u_;
};

}  // namespace gradual::testing

#endif  // GRADUAL_TESTS_SUPPORT_ALGORITHM_W_H_
