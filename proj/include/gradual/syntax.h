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

#ifndef GRADUAL_SYNTAX_H_
#define GRADUAL_SYNTAX_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gradual {

// Half-open byte range into the source, plus the 1-based position of its
// first byte.
struct Span {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

std::string to_string(const Span& span);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, Span span,
              std::vector<std::string> expected = {});
  const Span& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Span span_;
  std::vector<std::string> expected_;
};

// ---------------------------------------------------------------------------
// Calendar dates and currencies are literal forms of the language.

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<Date> from_ymd(int year, int month, int day);
  static std::optional<Date> parse(std::string_view iso);
  // Days since 1970-01-01.
  std::int64_t serial() const;
  std::string iso() const;

  friend auto operator<=>(const Date&, const Date&) = default;
};

struct Currency {
  std::string code;
  friend auto operator<=>(const Currency&, const Currency&) = default;
};

bool is_currency_code(std::string_view word);

// ---------------------------------------------------------------------------
// Surface types.

struct SurfaceType;
using TypeRef = std::shared_ptr<const SurfaceType>;

struct SurfaceType {
  struct Var {
    std::string name;
  };
  // Named constructor applied to zero or more arguments: Int, Obs Double.
  struct Con {
    std::string name;
    std::vector<TypeRef> args;
  };
  struct Arrow {
    TypeRef domain;
    TypeRef codomain;
  };
  struct Record {
    TypeRef row;
  };
  struct Variant {
    TypeRef row;
  };
  struct RowField {
    std::string label;
    TypeRef type;
    TypeRef tail;
  };
  struct EmptyRow {};
  struct Mu {
    std::string var;
    TypeRef body;
  };
  struct Dyn {};

  using Node =
      std::variant<Var, Con, Arrow, Record, Variant, RowField, EmptyRow, Mu, Dyn>;
  Node node;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

namespace types {
TypeRef var(std::string name);
TypeRef con(std::string name, std::vector<TypeRef> args = {});
TypeRef arrow(TypeRef domain, TypeRef codomain);
TypeRef record(TypeRef row);
TypeRef variant(TypeRef row);
TypeRef field(std::string label, TypeRef type, TypeRef tail);
TypeRef empty_row();
TypeRef mu(std::string var, TypeRef body);
TypeRef dyn();
// Builds `l1 : t1; ... ; tail` from an ordered list of fields.
TypeRef row(std::vector<std::pair<std::string, TypeRef>> fields,
            TypeRef tail = nullptr);
}  // namespace types

bool structurally_equal(const SurfaceType& a, const SurfaceType& b);
bool contains_dyn(const SurfaceType& t);

// ---------------------------------------------------------------------------
// Terms.

struct Term;
using TermRef = std::shared_ptr<const Term>;

struct Literal {
  using Value = std::variant<std::int64_t, double, std::string, Date, Currency>;
  Value value;
};

struct Term {
  struct Var {
    std::string name;
  };
  struct Lambda {
    std::string param;
    TermRef body;
  };
  struct Apply {
    TermRef fn;
    TermRef arg;
  };
  struct Let {
    bool recursive = false;
    std::string name;
    TermRef bound;
    TermRef body;
  };
  struct Annot {
    TermRef term;
    TypeRef type;
  };
  struct Record {
    std::vector<std::pair<std::string, TermRef>> fields;
  };
  struct Project {
    TermRef record;
    std::string label;
  };
  struct Inject {
    std::string label;
    TermRef payload;
  };
  struct Arm {
    std::string label;
    std::string binder;  // empty when the payload is ignored
    TermRef body;
  };
  struct Match {
    TermRef scrutinee;
    std::vector<Arm> arms;
  };

  using Node = std::variant<Var, Lambda, Apply, Let, Annot, Record, Project,
                            Inject, Match, Literal>;
  Node node;
  Span span;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

template <typename T>
TermRef make_term(T node, Span span = {}) {
  return std::make_shared<const Term>(Term{std::move(node), span});
}

// Structural equality that ignores source spans.
bool structurally_equal(const Term& a, const Term& b);

// Unit is the empty record; it is the payload of bare variant labels.
TermRef unit_term(Span span = {});
bool is_unit(const Term& t);

// Rewrites every free occurrence of `name` in `body` into `(name : type)`.
// Occurrences that are already the direct operand of an annotation are left
// alone, so the rewrite is idempotent.
TermRef annotate_binder_uses(const TermRef& body, const std::string& name,
                             const TypeRef& type);

// ---------------------------------------------------------------------------
// Parsing and printing.

// A REPL line or prelude snippet: either `let [rec] x = t` with no `in`, or
// a plain term.
struct TopLevel {
  struct Binding {
    bool recursive = false;
    std::string name;
    TermRef bound;
  };
  std::variant<Binding, TermRef> item;
};

TermRef parse_term(std::string_view source);
TypeRef parse_type(std::string_view source);
TopLevel parse_toplevel(std::string_view source);

std::string pretty_term(const Term& t);
std::string pretty_type(const SurfaceType& t);

// Labels of the binary operators that parse infix; each is an ordinary
// curried function bound in the standard environment.
bool is_infix_operator(std::string_view name);

}  // namespace gradual

#endif  // GRADUAL_SYNTAX_H_
