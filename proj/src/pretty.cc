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

#include <fmt/format.h>

#include <set>
#include <string>

#include "gradual/syntax.h"

namespace gradual {

namespace {

// ----- types ---------------------------------------------------------------

// Precedence levels mirror the parser: a row, an arrow or μ, a constructor
// application, an atom.
enum TypeLevel { kRowLevel = 0, kArrowLevel = 1, kAppLevel = 2, kAtomLevel = 3 };

std::string type_at(const SurfaceType& t, int level);

std::string paren_if(bool wrap, std::string s) {
  return wrap ? "(" + s + ")" : s;
}

// Walks a row chain; returns false when labels repeat, since the sugared
// forms reject duplicates.
bool row_chain(const SurfaceType& row,
               std::vector<const SurfaceType::RowField*>& fields,
               const SurfaceType*& tail) {
  std::set<std::string> seen;
  const SurfaceType* r = &row;
  while (auto* f = r->as<SurfaceType::RowField>()) {
    if (!seen.insert(f->label).second) return false;
    fields.push_back(f);
    r = f->tail.get();
  }
  tail = r;
  return true;
}

std::string row_type(const SurfaceType& row, bool is_record) {
  std::vector<const SurfaceType::RowField*> fields;
  const SurfaceType* tail = nullptr;
  if (!row_chain(row, fields, tail)) {
    return std::string(is_record ? "Pi " : "Sigma ") + type_at(row, kAtomLevel);
  }
  std::string out = is_record ? "{" : "[";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += "; ";
    out += fields[i]->label + " : " + type_at(*fields[i]->type, kArrowLevel);
  }
  if (!tail->is<SurfaceType::EmptyRow>()) {
    out += fields.empty() ? "| " : " | ";
    out += type_at(*tail, kArrowLevel);
  }
  out += is_record ? "}" : "]";
  return out;
}

std::string type_at(const SurfaceType& t, int level) {
  if (auto* v = t.as<SurfaceType::Var>()) return v->name;
  if (t.is<SurfaceType::Dyn>()) return "?";
  if (t.is<SurfaceType::EmptyRow>()) return "eps";
  if (auto* c = t.as<SurfaceType::Con>()) {
    if (c->args.empty()) return c->name;
    std::string s = c->name;
    for (const auto& a : c->args) s += " " + type_at(*a, kAtomLevel);
    return paren_if(level > kAppLevel, s);
  }
  if (auto* a = t.as<SurfaceType::Arrow>()) {
    return paren_if(level > kArrowLevel, type_at(*a->domain, kAppLevel) +
                                             " -> " +
                                             type_at(*a->codomain, kArrowLevel));
  }
  if (auto* r = t.as<SurfaceType::Record>()) {
    std::string s = row_type(*r->row, true);
    return paren_if(level > kAppLevel && s.front() != '{', s);
  }
  if (auto* r = t.as<SurfaceType::Variant>()) {
    std::string s = row_type(*r->row, false);
    return paren_if(level > kAppLevel && s.front() != '[', s);
  }
  if (auto* f = t.as<SurfaceType::RowField>()) {
    return paren_if(level > kRowLevel, f->label + " : " +
                                           type_at(*f->type, kArrowLevel) +
                                           "; " + type_at(*f->tail, kRowLevel));
  }
  auto* m = t.as<SurfaceType::Mu>();
  return paren_if(level > kArrowLevel,
                  "mu " + m->var + ". " + type_at(*m->body, kRowLevel));
}

// ----- terms ---------------------------------------------------------------

enum TermLevel {
  kExprLevel = 0,
  kCompareLevel = 1,
  kAddLevel = 2,
  kMulLevel = 3,
  kPowLevel = 4,
  kApplyLevel = 5,
  kPostfixLevel = 6,
};

std::string term_at(const Term& t, int level);

std::string escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string literal_text(const Literal& lit) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::int64_t>) {
          return v < 0 ? fmt::format("({})", v) : fmt::format("{}", v);
        } else if constexpr (std::is_same_v<V, double>) {
          std::string s = fmt::format("{}", v);
          if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
          return v < 0 ? "(" + s + ")" : s;
        } else if constexpr (std::is_same_v<V, std::string>) {
          return escape(v);
        } else if constexpr (std::is_same_v<V, Date>) {
          return v.iso();
        } else {
          return v.code;
        }
      },
      lit.value);
}

struct Infix {
  std::string op;
  const Term* lhs;
  const Term* rhs;
};

std::optional<Infix> as_infix(const Term& t) {
  auto* outer = t.as<Term::Apply>();
  if (!outer) return std::nullopt;
  auto* inner = outer->fn->as<Term::Apply>();
  if (!inner) return std::nullopt;
  auto* op = inner->fn->as<Term::Var>();
  if (!op || !is_infix_operator(op->name)) return std::nullopt;
  return Infix{op->name, inner->arg.get(), outer->arg.get()};
}

int infix_level(const std::string& op) {
  if (op == "+" || op == "-") return kAddLevel;
  if (op == "*" || op == "/") return kMulLevel;
  if (op == "**") return kPowLevel;
  return kCompareLevel;
}

// Application arguments and variant payloads: injections always get
// parentheses so that a following argument is not swallowed as payload.
std::string operand(const Term& t) {
  if (t.is<Term::Inject>()) return "(" + term_at(t, kExprLevel) + ")";
  return term_at(t, kPostfixLevel);
}

std::string term_at(const Term& t, int level) {
  if (auto* v = t.as<Term::Var>()) {
    return is_infix_operator(v->name) ? "(" + v->name + ")" : v->name;
  }
  if (auto* lit = t.as<Literal>()) return literal_text(*lit);
  if (auto* l = t.as<Term::Lambda>()) {
    return paren_if(level > kExprLevel,
                    "fun " + l->param + " -> " + term_at(*l->body, kExprLevel));
  }
  if (auto* l = t.as<Term::Let>()) {
    return paren_if(level > kExprLevel,
                    fmt::format("let {}{} = {} in {}", l->recursive ? "rec " : "",
                                l->name, term_at(*l->bound, kExprLevel),
                                term_at(*l->body, kExprLevel)));
  }
  if (auto* m = t.as<Term::Match>()) {
    std::string s = "match " + term_at(*m->scrutinee, kCompareLevel) + " with";
    for (std::size_t i = 0; i < m->arms.size(); ++i) {
      const auto& arm = m->arms[i];
      s += " | " + arm.label;
      if (!arm.binder.empty()) s += " " + arm.binder;
      s += " -> ";
      // A nested match would capture the remaining arms.
      bool open_ended = arm.body->is<Term::Match>() || arm.body->is<Term::Let>() ||
                        arm.body->is<Term::Lambda>();
      s += term_at(*arm.body, open_ended && i + 1 < m->arms.size() ? kCompareLevel
                                                                    : kExprLevel);
    }
    return paren_if(level > kExprLevel, s);
  }
  if (auto* a = t.as<Term::Annot>()) {
    return "(" + term_at(*a->term, kCompareLevel) + " : " +
           type_at(*a->type, kArrowLevel) + ")";
  }
  if (auto infix = as_infix(t)) {
    int own = infix_level(infix->op);
    int lhs_level = own, rhs_level = own + 1;
    if (own == kCompareLevel) lhs_level = kAddLevel;
    if (own == kPowLevel) {
      lhs_level = kApplyLevel;
      rhs_level = kPowLevel;
    }
    return paren_if(level > own, term_at(*infix->lhs, lhs_level) + " " +
                                     infix->op + " " +
                                     term_at(*infix->rhs, rhs_level));
  }
  if (auto* a = t.as<Term::Apply>()) {
    std::string fn = a->fn->is<Term::Inject>() ? operand(*a->fn)
                                               : term_at(*a->fn, kApplyLevel);
    return paren_if(level > kApplyLevel, fn + " " + operand(*a->arg));
  }
  if (auto* i = t.as<Term::Inject>()) {
    if (is_unit(*i->payload)) return i->label;
    return paren_if(level > kApplyLevel, i->label + " " + operand(*i->payload));
  }
  if (auto* p = t.as<Term::Project>()) {
    return operand(*p->record) + "." + p->label;
  }
  auto* r = t.as<Term::Record>();
  if (r->fields.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < r->fields.size(); ++i) {
    if (i) s += ", ";
    s += r->fields[i].first + " = " + term_at(*r->fields[i].second, kExprLevel);
  }
  return s + "}";
}

}  // namespace

std::string pretty_type(const SurfaceType& t) { return type_at(t, kRowLevel); }

std::string pretty_term(const Term& t) { return term_at(t, kExprLevel); }

}  // namespace gradual
