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

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <utility>

#include "gradual/syntax.h"

namespace gradual {

std::string to_string(const Span& span) {
  return fmt::format("{}:{}", span.line, span.column);
}

SyntaxError::SyntaxError(const std::string& message, Span span,
                         std::vector<std::string> expected)
    : std::runtime_error(message), span_(span), expected_(std::move(expected)) {}

// ---------------------------------------------------------------------------
// Dates

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : kDays[m - 1];
}

}  // namespace

std::optional<Date> Date::from_ymd(int year, int month, int day) {
  if (year < 1 || year > 9999 || month < 1 || month > 12 || day < 1 ||
      day > days_in_month(year, month)) {
    return std::nullopt;
  }
  return Date{year, month, day};
}

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  auto num = [&](std::size_t at, std::size_t len) {
    int v = 0;
    for (std::size_t i = at; i < at + len; ++i) {
      if (iso[i] < '0' || iso[i] > '9') return -1;
      v = v * 10 + (iso[i] - '0');
    }
    return v;
  };
  return from_ymd(num(0, 4), num(5, 2), num(8, 2));
}

std::int64_t Date::serial() const {
  // Civil-from-days inverse, proleptic Gregorian calendar.
  std::int64_t y = year - (month <= 2 ? 1 : 0);
  std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  std::int64_t yoe = y - era * 400;
  std::int64_t mp = (month + 9) % 12;
  std::int64_t doy = (153 * mp + 2) / 5 + day - 1;
  std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

std::string Date::iso() const {
  return fmt::format("{:04}-{:02}-{:02}", year, month, day);
}

bool is_currency_code(std::string_view word) {
  static constexpr std::array<std::string_view, 11> kCodes = {
      "USD", "EUR", "GBP", "JPY", "CHF", "CAD",
      "AUD", "CNY", "HKD", "SEK", "NOK"};
  return std::find(kCodes.begin(), kCodes.end(), word) != kCodes.end();
}

// ---------------------------------------------------------------------------
// Type builders

namespace types {

namespace {
TypeRef make(SurfaceType::Node n) {
  return std::make_shared<const SurfaceType>(SurfaceType{std::move(n)});
}
}  // namespace

TypeRef var(std::string name) { return make(SurfaceType::Var{std::move(name)}); }
TypeRef con(std::string name, std::vector<TypeRef> args) {
  return make(SurfaceType::Con{std::move(name), std::move(args)});
}
TypeRef arrow(TypeRef domain, TypeRef codomain) {
  return make(SurfaceType::Arrow{std::move(domain), std::move(codomain)});
}
TypeRef record(TypeRef row) { return make(SurfaceType::Record{std::move(row)}); }
TypeRef variant(TypeRef row) { return make(SurfaceType::Variant{std::move(row)}); }
TypeRef field(std::string label, TypeRef type, TypeRef tail) {
  return make(SurfaceType::RowField{std::move(label), std::move(type), std::move(tail)});
}
TypeRef empty_row() {
  static const TypeRef kEmpty = make(SurfaceType::EmptyRow{});
  return kEmpty;
}
TypeRef mu(std::string var, TypeRef body) {
  return make(SurfaceType::Mu{std::move(var), std::move(body)});
}
TypeRef dyn() {
  static const TypeRef kDyn = make(SurfaceType::Dyn{});
  return kDyn;
}
TypeRef row(std::vector<std::pair<std::string, TypeRef>> fields, TypeRef tail) {
  TypeRef r = tail ? std::move(tail) : empty_row();
  for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
    r = field(std::move(it->first), std::move(it->second), std::move(r));
  }
  return r;
}

}  // namespace types

bool structurally_equal(const SurfaceType& a, const SurfaceType& b) {
  if (a.node.index() != b.node.index()) return false;
  auto eq = [](const TypeRef& x, const TypeRef& y) {
    return structurally_equal(*x, *y);
  };
  if (auto* x = a.as<SurfaceType::Var>()) return x->name == b.as<SurfaceType::Var>()->name;
  if (auto* x = a.as<SurfaceType::Con>()) {
    auto* y = b.as<SurfaceType::Con>();
    return x->name == y->name &&
           std::equal(x->args.begin(), x->args.end(), y->args.begin(),
                      y->args.end(), eq);
  }
  if (auto* x = a.as<SurfaceType::Arrow>()) {
    auto* y = b.as<SurfaceType::Arrow>();
    return eq(x->domain, y->domain) && eq(x->codomain, y->codomain);
  }
  if (auto* x = a.as<SurfaceType::Record>()) return eq(x->row, b.as<SurfaceType::Record>()->row);
  if (auto* x = a.as<SurfaceType::Variant>()) return eq(x->row, b.as<SurfaceType::Variant>()->row);
  if (auto* x = a.as<SurfaceType::RowField>()) {
    auto* y = b.as<SurfaceType::RowField>();
    return x->label == y->label && eq(x->type, y->type) && eq(x->tail, y->tail);
  }
  if (auto* x = a.as<SurfaceType::Mu>()) {
    auto* y = b.as<SurfaceType::Mu>();
    return x->var == y->var && eq(x->body, y->body);
  }
  return true;  // EmptyRow, Dyn
}

bool contains_dyn(const SurfaceType& t) {
  return std::visit(
      [](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, SurfaceType::Dyn>) {
          return true;
        } else if constexpr (std::is_same_v<N, SurfaceType::Con>) {
          return std::any_of(n.args.begin(), n.args.end(),
                             [](const TypeRef& a) { return contains_dyn(*a); });
        } else if constexpr (std::is_same_v<N, SurfaceType::Arrow>) {
          return contains_dyn(*n.domain) || contains_dyn(*n.codomain);
        } else if constexpr (std::is_same_v<N, SurfaceType::Record> ||
                             std::is_same_v<N, SurfaceType::Variant>) {
          return contains_dyn(*n.row);
        } else if constexpr (std::is_same_v<N, SurfaceType::RowField>) {
          return contains_dyn(*n.type) || contains_dyn(*n.tail);
        } else if constexpr (std::is_same_v<N, SurfaceType::Mu>) {
          return contains_dyn(*n.body);
        } else {
          return false;
        }
      },
      t.node);
}

// ---------------------------------------------------------------------------
// Terms

TermRef unit_term(Span span) { return make_term(Term::Record{}, span); }

bool is_unit(const Term& t) {
  auto* r = t.as<Term::Record>();
  return r && r->fields.empty();
}

bool structurally_equal(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  auto eq = [](const TermRef& x, const TermRef& y) {
    return structurally_equal(*x, *y);
  };
  if (auto* x = a.as<Term::Var>()) return x->name == b.as<Term::Var>()->name;
  if (auto* x = a.as<Term::Lambda>()) {
    auto* y = b.as<Term::Lambda>();
    return x->param == y->param && eq(x->body, y->body);
  }
  if (auto* x = a.as<Term::Apply>()) {
    auto* y = b.as<Term::Apply>();
    return eq(x->fn, y->fn) && eq(x->arg, y->arg);
  }
  if (auto* x = a.as<Term::Let>()) {
    auto* y = b.as<Term::Let>();
    return x->recursive == y->recursive && x->name == y->name &&
           eq(x->bound, y->bound) && eq(x->body, y->body);
  }
  if (auto* x = a.as<Term::Annot>()) {
    auto* y = b.as<Term::Annot>();
    return eq(x->term, y->term) && structurally_equal(*x->type, *y->type);
  }
  if (auto* x = a.as<Term::Record>()) {
    auto* y = b.as<Term::Record>();
    return std::equal(x->fields.begin(), x->fields.end(), y->fields.begin(),
                      y->fields.end(), [&](const auto& f, const auto& g) {
                        return f.first == g.first && eq(f.second, g.second);
                      });
  }
  if (auto* x = a.as<Term::Project>()) {
    auto* y = b.as<Term::Project>();
    return x->label == y->label && eq(x->record, y->record);
  }
  if (auto* x = a.as<Term::Inject>()) {
    auto* y = b.as<Term::Inject>();
    return x->label == y->label && eq(x->payload, y->payload);
  }
  if (auto* x = a.as<Term::Match>()) {
    auto* y = b.as<Term::Match>();
    return eq(x->scrutinee, y->scrutinee) &&
           std::equal(x->arms.begin(), x->arms.end(), y->arms.begin(),
                      y->arms.end(), [&](const auto& p, const auto& q) {
                        return p.label == q.label && p.binder == q.binder &&
                               eq(p.body, q.body);
                      });
  }
  return a.as<Literal>()->value == b.as<Literal>()->value;
}

TermRef annotate_binder_uses(const TermRef& body, const std::string& name,
                             const TypeRef& type) {
  auto go = [&](auto&& self, const TermRef& t) -> TermRef {
    const Span s = t->span;
    if (auto* v = t->as<Term::Var>()) {
      if (v->name != name) return t;
      return make_term(Term::Annot{t, type}, s);
    }
    if (auto* l = t->as<Term::Lambda>()) {
      if (l->param == name) return t;
      return make_term(Term::Lambda{l->param, self(self, l->body)}, s);
    }
    if (auto* a = t->as<Term::Apply>()) {
      return make_term(Term::Apply{self(self, a->fn), self(self, a->arg)}, s);
    }
    if (auto* l = t->as<Term::Let>()) {
      bool shadows = l->name == name;
      TermRef bound = (shadows && l->recursive) ? l->bound : self(self, l->bound);
      TermRef inner = shadows ? l->body : self(self, l->body);
      return make_term(Term::Let{l->recursive, l->name, bound, inner}, s);
    }
    if (auto* a = t->as<Term::Annot>()) {
      if (auto* v = a->term->as<Term::Var>(); v && v->name == name) return t;
      return make_term(Term::Annot{self(self, a->term), a->type}, s);
    }
    if (auto* r = t->as<Term::Record>()) {
      Term::Record out;
      for (const auto& [l, f] : r->fields) out.fields.emplace_back(l, self(self, f));
      return make_term(std::move(out), s);
    }
    if (auto* p = t->as<Term::Project>()) {
      return make_term(Term::Project{self(self, p->record), p->label}, s);
    }
    if (auto* i = t->as<Term::Inject>()) {
      return make_term(Term::Inject{i->label, self(self, i->payload)}, s);
    }
    if (auto* m = t->as<Term::Match>()) {
      Term::Match out{self(self, m->scrutinee), {}};
      for (const auto& arm : m->arms) {
        out.arms.push_back(Term::Arm{
            arm.label, arm.binder,
            arm.binder == name ? arm.body : self(self, arm.body)});
      }
      return make_term(std::move(out), s);
    }
    return t;
  };
  return go(go, body);
}

}  // namespace gradual
