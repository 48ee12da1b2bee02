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


#include "support/properties.h"

#include <memory>
#include <optional>

#include <fmt/format.h>

#include "gradual/infer.h"
#include "gradual/runtime.h"
#include "support/algorithm_w.h"
#include "support/generators.h"
#include "support/term_gen.h"
#include "support/type_oracles.h"

namespace gradual::testing {
namespace {

struct Typed {
  std::unique_ptr<TypeStore> store = std::make_unique<TypeStore>();
  std::optional<InferOutcome> outcome;
  TypeRef type;
  std::string error;

  TypeRef resolve(const Term& t) { return store->resolve(outcome->term_types.at(&t)); }
};

Typed typecheck(const TermRef& t) {
  Typed out;
  TypeEnv env;
  for (const auto& [name, text] : generator_builtins()) {
    env = env.extend(name, builtin_scheme(*out.store, text));
  }
  Inferencer inferencer(*out.store);
  try {
    out.outcome = inferencer.infer_program(env, t);
    out.type = out.store->resolve(out.outcome->type);
  } catch (const TypeError& e) {
    out.error = e.what();
  }
  return out;
}

const ValueEnv& runtime_env() {
  static const ValueEnv env = [] {
    TypeStore store;
    return builtins(store).values;
  }();
  return env;
}

void violation(PropertyReport& r, const std::string& what) {
  if (r.violations++ == 0) r.first_violation = what;
}

}  // namespace

PropertyReport check_conservativity(int count, unsigned seed) {
  PropertyReport report;
  TermGen gen(seed);
  TypeGen types(seed + 1, TypeGen::Options{true, false, true});
  AlgorithmW oracle(generator_builtins());
  while (report.checked < count) {
    TermRef t = gen.program(3 + gen.below(3));
    if (gen.below(3) == 0) {
      t = annotate(t, [&](const Term&) { return gen.below(6) == 0 ? types.star(2) : nullptr; });
    }
    ++report.checked;
    auto expected = oracle.infer(t);
    Typed actual = typecheck(t);
    if (actual.outcome) ++report.accepted;
    std::string program = pretty_term(*t);
    if (expected.has_value() != actual.outcome.has_value()) {
      violation(report, fmt::format("verdicts differ on {}: oracle {}, inferencer {}", program,
                                    expected ? pretty_type(**expected) : "rejects",
                                    actual.outcome ? pretty_type(*actual.type) : actual.error));
    } else if (expected && !alpha_equivalent(**expected, *actual.type)) {
      violation(report, fmt::format("types differ on {}: oracle {}, inferencer {}", program,
                                    pretty_type(**expected), pretty_type(*actual.type)));
    }
  }
  return report;
}

PropertyReport check_monotonicity(int count, unsigned seed) {
  PropertyReport report;
  TermGen gen(seed);
  for (int attempts = 0; report.checked < count && attempts < count * 50; ++attempts) {
    TermRef t = gen.program(3 + gen.below(3));
    Typed plain = typecheck(t);
    if (!plain.outcome) continue;
    TermRef annotated =
        annotate(t, [&](const Term& s) { return gen.below(3) == 0 ? plain.resolve(s) : nullptr; });
    auto sites = annotations(annotated);
    if (sites.empty()) continue;
    Typed before = typecheck(annotated);
    if (!before.outcome) {
      violation(report, fmt::format("annotating with inferred types broke {}: {}",
                                    pretty_term(*annotated), before.error));
      continue;
    }
    ++report.checked;
    ++report.accepted;
    const Term* site = sites[gen.below(static_cast<int>(sites.size()))];
    int position = gen.below(star_positions(site->as<Term::Annot>()->type));
    TermRef weaker = weaken(annotated, site, position);
    Typed after = typecheck(weaker);
    if (!after.outcome) {
      violation(report, fmt::format("{} rejected after weakening: {}", pretty_term(*weaker),
                                    after.error));
    } else if (!less_precise_instance(after.type, before.type)) {
      violation(report, fmt::format("{} : {} is not below {}", pretty_term(*weaker),
                                    pretty_type(*after.type), pretty_type(*before.type)));
    }
  }
  return report;
}

namespace {

// Wraps random subterms as `(((s : ?) : r) : ?)` for a random type r.
TermRef sandwich(const TermRef& t, TermGen& gen, TypeGen& types) {
  TermRef inner = map_children(t, [&](const TermRef& c) { return sandwich(c, gen, types); });
  if (gen.below(4) != 0) return inner;
  TermRef hidden = make_term(Term::Annot{inner, types::dyn()});
  TermRef checked = make_term(Term::Annot{hidden, types.star(2)});
  return make_term(Term::Annot{checked, types::dyn()});
}

// Runs `t` and returns the blamed span of a runtime type error, if any.
std::optional<Span> run(const TermRef& t, const InferOutcome& outcome) {
  Evaluator evaluator;
  try {
    evaluator.eval(t, runtime_env(), std::make_shared<const CastTable>(outcome.casts));
  } catch (const RuntimeTypeError& e) {
    return e.blame();
  } catch (const RuntimeError&) {
  }
  return std::nullopt;
}

}  // namespace

PropertyReport check_blame_safety(int count, unsigned seed) {
  PropertyReport report;
  TermGen gen(seed);
  TypeGen types(seed + 2, TypeGen::Options{false, true, true});
  for (int attempts = 0; report.checked < count && attempts < count * 50; ++attempts) {
    TermRef t = with_spans(gen.program(3 + gen.below(3)));
    Typed plain = typecheck(t);
    if (!plain.outcome) continue;
    ++report.dyn_free_programs;
    if (auto blame = run(t, *plain.outcome)) {
      ++report.dyn_free_runtime_type_errors;
      violation(report, fmt::format("dyn-free program {} raised a runtime type error at {}",
                                    pretty_term(*t), to_string(*blame)));
    }

    TermRef dynamic = with_spans(sandwich(t, gen, types));
    Typed typed = typecheck(dynamic);
    ++report.checked;
    if (!typed.outcome) {
      violation(report, fmt::format("{} rejected statically: {}", pretty_term(*dynamic),
                                    typed.error));
      continue;
    }
    ++report.accepted;
    auto blame = run(dynamic, *typed.outcome);
    if (!blame) continue;
    ++report.runtime_type_errors;
    bool safe = false;
    for (const Term* s : typed.outcome->order) {
      if (s->span == *blame && contains_dyn(*typed.resolve(*s))) safe = true;
      // An argument handed to a function whose type mentions dyn.
      const auto* app = s->as<Term::Apply>();
      if (app && app->arg->span == *blame && contains_dyn(*typed.resolve(*app->fn))) safe = true;
    }
    if (!safe) {
      violation(report, fmt::format("{} blamed {} outside any dyn-typed term",
                                    pretty_term(*dynamic), to_string(*blame)));
    }
  }
  return report;
}

}  // namespace gradual::testing
