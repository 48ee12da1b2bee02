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

#include <algorithm>
#include <charconv>
#include <set>
#include <string>
#include <utility>

#include "gradual/syntax.h"
#include "lexer.h"

namespace gradual {

namespace {

using detail::Tok;
using detail::Token;

constexpr std::string_view kOperators[] = {"+",  "-",  "*",  "/", "**", "<",
                                           "<=", ">", ">=", "==", "!="};

Span join(const Span& a, const Span& b) {
  Span s = a;
  s.end = std::max(a.end, b.end);
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view source)
      : tokens_(detail::tokenize(source)) {}

  TermRef whole_term() {
    TermRef t = expr();
    expect_end();
    return t;
  }

  TypeRef whole_type() {
    TypeRef t = row_or_type();
    expect_end();
    return t;
  }

  TopLevel toplevel() {
    if (at_keyword("let")) {
      std::size_t save = pos_;
      Span start = advance().span;
      bool rec = accept_keyword("rec");
      std::string name = ident("binding name");
      TermRef bound = binding_rhs(start);
      if (at_end()) return TopLevel{TopLevel::Binding{rec, name, bound}};
      pos_ = save;
    }
    return TopLevel{whole_term()};
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  // ----- token helpers ---------------------------------------------------

  const Token& cur() const { return tokens_[pos_]; }
  const Token& ahead(std::size_t k) const {
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  Span last_span() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1].span; }

  bool at_end() const { return cur().kind == Tok::kEnd; }
  bool at_symbol(std::string_view s) const {
    return cur().kind == Tok::kSymbol && cur().text == s;
  }
  bool at_keyword(std::string_view s) const {
    return cur().kind == Tok::kKeyword && cur().text == s;
  }
  bool accept_symbol(std::string_view s) {
    if (!at_symbol(s)) return false;
    advance();
    return true;
  }
  bool accept_keyword(std::string_view s) {
    if (!at_keyword(s)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = at_end() ? "end of input" : "'" + cur().text + "'";
    std::string msg = "unexpected " + found + ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw SyntaxError(msg, cur().span, std::move(expected));
  }

  Span expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail({"'" + std::string(s) + "'"});
    return advance().span;
  }
  void expect_keyword(std::string_view s) {
    if (!at_keyword(s)) fail({"'" + std::string(s) + "'"});
    advance();
  }
  void expect_end() {
    if (!at_end()) fail({"end of input"});
  }
  std::string ident(const char* what) {
    if (cur().kind != Tok::kIdent) fail({what});
    return advance().text;
  }
  std::string label(const char* what) {
    if (cur().kind != Tok::kIdent && cur().kind != Tok::kUpper) fail({what});
    return advance().text;
  }

  // ----- terms -------------------------------------------------------------

  struct Param {
    std::string name;
    TypeRef annotation;  // null when absent
  };

  bool at_param() const {
    return cur().kind == Tok::kIdent ||
           (at_symbol("(") && ahead(1).kind == Tok::kIdent &&
            ahead(2).kind == Tok::kSymbol && ahead(2).text == ":");
  }

  Param param() {
    if (cur().kind == Tok::kIdent) return Param{advance().text, nullptr};
    expect_symbol("(");
    std::string name = ident("parameter name");
    expect_symbol(":");
    TypeRef type = type_expr();
    expect_symbol(")");
    return Param{std::move(name), std::move(type)};
  }

  TermRef lambdas(std::vector<Param> params, TermRef body, Span start) {
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      if (it->annotation) body = annotate_binder_uses(body, it->name, it->annotation);
      body = make_term(Term::Lambda{it->name, body}, join(start, body->span));
    }
    return body;
  }

  TermRef binding_rhs(Span start) {
    std::vector<Param> params;
    while (at_param()) params.push_back(param());
    expect_symbol("=");
    TermRef bound = expr();
    return lambdas(std::move(params), std::move(bound), start);
  }

  TermRef expr() {
    Span start = cur().span;
    if (accept_keyword("let")) {
      bool rec = accept_keyword("rec");
      std::string name = ident("binding name");
      TermRef bound = binding_rhs(start);
      expect_keyword("in");
      TermRef body = expr();
      return make_term(Term::Let{rec, std::move(name), bound, body},
                       join(start, body->span));
    }
    if (accept_keyword("fun")) {
      std::vector<Param> params;
      while (at_param()) params.push_back(param());
      if (params.empty()) fail({"parameter"});
      expect_symbol("->");
      TermRef body = expr();
      return lambdas(std::move(params), std::move(body), start);
    }
    if (accept_keyword("match")) return match(start);
    return annotated();
  }

  TermRef match(Span start) {
    TermRef scrutinee = expr();
    expect_keyword("with");
    accept_symbol("|");
    std::vector<Term::Arm> arms;
    std::set<std::string> seen;
    Span end = start;
    do {
      if (cur().kind != Tok::kUpper) fail({"variant label"});
      Span label_span = cur().span;
      // `Obs Double =>` style patterns name a multi-word label.
      std::string name;
      while (cur().kind == Tok::kUpper) name += advance().text;
      std::string binder;
      if (cur().kind == Tok::kIdent) binder = advance().text;
      if (binder == "_") binder.clear();
      if (!accept_symbol("->") && !accept_symbol("=>")) fail({"'->'", "'=>'"});
      if (!seen.insert(name).second) {
        throw SyntaxError("duplicate match arm '" + name + "'", label_span);
      }
      TermRef body = expr();
      end = body->span;
      arms.push_back(Term::Arm{std::move(name), std::move(binder), body});
    } while (accept_symbol("|"));
    return make_term(Term::Match{std::move(scrutinee), std::move(arms)},
                     join(start, end));
  }

  TermRef annotated() {
    TermRef t = comparison();
    if (accept_symbol(":")) {
      TypeRef type = type_expr();
      return make_term(Term::Annot{t, std::move(type)}, join(t->span, last_span()));
    }
    return t;
  }

  TermRef binary(const std::string& op, Span op_span, TermRef lhs, TermRef rhs) {
    Span whole = join(lhs->span, rhs->span);
    TermRef fn = make_term(Term::Var{op}, op_span);
    TermRef partial = make_term(Term::Apply{fn, lhs}, join(lhs->span, op_span));
    return make_term(Term::Apply{partial, rhs}, whole);
  }

  TermRef comparison() {
    TermRef lhs = additive();
    for (std::string_view op : {"<", "<=", ">", ">=", "==", "!="}) {
      if (at_symbol(op)) {
        Span s = advance().span;
        TermRef rhs = additive();
        return binary(std::string(op), s, lhs, rhs);
      }
    }
    return lhs;
  }

  TermRef additive() {
    TermRef lhs = multiplicative();
    while (at_symbol("+") || at_symbol("-")) {
      std::string op = cur().text;
      Span s = advance().span;
      lhs = binary(op, s, lhs, multiplicative());
    }
    return lhs;
  }

  TermRef multiplicative() {
    TermRef lhs = power();
    while (at_symbol("*") || at_symbol("/")) {
      std::string op = cur().text;
      Span s = advance().span;
      lhs = binary(op, s, lhs, power());
    }
    return lhs;
  }

  TermRef power() {
    TermRef lhs = application();
    if (at_symbol("**")) {
      Span s = advance().span;
      return binary("**", s, lhs, power());
    }
    return lhs;
  }

  bool at_atom_start() const {
    switch (cur().kind) {
      case Tok::kIdent:
      case Tok::kUpper:
      case Tok::kInt:
      case Tok::kDouble:
      case Tok::kString:
      case Tok::kDate:
        return true;
      case Tok::kSymbol:
        return cur().text == "(" || cur().text == "{";
      default:
        return false;
    }
  }

  TermRef application() {
    TermRef fn = postfix();
    while (at_atom_start()) {
      TermRef arg = postfix();
      fn = make_term(Term::Apply{fn, arg}, join(fn->span, arg->span));
    }
    return fn;
  }

  TermRef postfix() {
    TermRef t = atom();
    while (at_symbol(".")) {
      advance();
      std::string l = label("field label");
      t = make_term(Term::Project{t, std::move(l)}, join(t->span, last_span()));
    }
    return t;
  }

  TermRef literal(Literal::Value v, Span s) {
    return make_term(Literal{std::move(v)}, s);
  }

  TermRef atom() {
    const Token& t = cur();
    Span s = t.span;
    switch (t.kind) {
      case Tok::kIdent:
        return make_term(Term::Var{advance().text}, s);
      case Tok::kInt: {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc()) throw SyntaxError("integer literal out of range", s);
        advance();
        return literal(v, s);
      }
      case Tok::kDouble: {
        double v = std::stod(t.text);
        advance();
        return literal(v, s);
      }
      case Tok::kString: {
        std::string v = advance().text;
        return literal(std::move(v), s);
      }
      case Tok::kDate: {
        std::string v = advance().text;
        return literal(*Date::parse(v), s);
      }
      case Tok::kUpper: {
        std::string name = advance().text;
        if (is_currency_code(name)) return literal(Currency{name}, s);
        if (at_atom_start()) {
          TermRef payload = postfix();
          return make_term(Term::Inject{std::move(name), payload},
                           join(s, payload->span));
        }
        return make_term(Term::Inject{std::move(name), unit_term(s)}, s);
      }
      case Tok::kSymbol:
        if (t.text == "(") return parenthesized();
        if (t.text == "{") return record();
        break;
      default:
        break;
    }
    fail({"expression"});
  }

  TermRef parenthesized() {
    Span start = advance().span;
    if (cur().kind == Tok::kSymbol && ahead(1).kind == Tok::kSymbol &&
        ahead(1).text == ")" && is_infix_operator(cur().text)) {
      std::string op = advance().text;
      Span end = expect_symbol(")");
      return make_term(Term::Var{std::move(op)}, join(start, end));
    }
    TermRef inner = expr();
    Span end = expect_symbol(")");
    // The parentheses belong to the term so that diagnostics quote them.
    return make_term(Term::Node(inner->node), join(start, end));
  }

  TermRef record() {
    Span start = advance().span;
    std::vector<std::pair<std::string, TermRef>> fields;
    std::set<std::string> seen;
    if (!at_symbol("}")) {
      do {
        Span label_span = cur().span;
        std::string l = label("field label");
        if (!seen.insert(l).second) {
          throw SyntaxError("duplicate record label '" + l + "'", label_span);
        }
        expect_symbol("=");
        fields.emplace_back(std::move(l), expr());
      } while (accept_symbol(","));
    }
    Span end = expect_symbol("}");
    return make_term(Term::Record{std::move(fields)}, join(start, end));
  }

  // ----- types -------------------------------------------------------------

  bool at_field_start() const {
    return (cur().kind == Tok::kIdent || cur().kind == Tok::kUpper) &&
           cur().text != "eps" && ahead(1).kind == Tok::kSymbol &&
           ahead(1).text == ":";
  }

  // `l : t; tail` or an ordinary type.
  TypeRef row_or_type() {
    if (!at_field_start()) return type_expr();
    std::string l = advance().text;
    expect_symbol(":");
    TypeRef field_type = type_expr();
    expect_symbol(";");
    TypeRef tail = row_or_type();
    return types::field(std::move(l), std::move(field_type), std::move(tail));
  }

  TypeRef type_expr() {
    if (accept_keyword("mu")) {
      std::string v = ident("type variable");
      expect_symbol(".");
      return types::mu(std::move(v), row_or_type());
    }
    TypeRef lhs = type_app();
    if (accept_symbol("->")) return types::arrow(std::move(lhs), type_expr());
    return lhs;
  }

  bool at_type_atom_start() const {
    switch (cur().kind) {
      case Tok::kIdent:
      case Tok::kUpper:
        return true;
      case Tok::kSymbol:
        return cur().text == "(" || cur().text == "{" || cur().text == "[" ||
               cur().text == "?";
      default:
        return false;
    }
  }

  TypeRef type_app() {
    if (cur().kind == Tok::kUpper && cur().text != "eps" && cur().text != "Dyn") {
      std::string name = advance().text;
      if ((name == "Pi" || name == "Sigma") && at_type_atom_start()) {
        TypeRef row = type_atom();
        return name == "Pi" ? types::record(row) : types::variant(row);
      }
      std::vector<TypeRef> args;
      while (at_type_atom_start()) args.push_back(type_atom());
      return types::con(std::move(name), std::move(args));
    }
    return type_atom();
  }

  TypeRef type_atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::kIdent:
        return types::var(advance().text);
      case Tok::kUpper: {
        std::string name = advance().text;
        if (name == "eps") return types::empty_row();
        if (name == "Dyn") return types::dyn();
        return types::con(std::move(name));
      }
      case Tok::kSymbol:
        if (accept_symbol("?")) return types::dyn();
        if (accept_symbol("(")) {
          TypeRef inner = row_or_type();
          expect_symbol(")");
          return inner;
        }
        if (at_symbol("{") || at_symbol("[")) return sugared_row();
        break;
      default:
        break;
    }
    fail({"type"});
  }

  // `{l : t; ...}` / `{l : t | r}` and the `[...]` variant counterparts.
  TypeRef sugared_row() {
    bool is_record = at_symbol("{");
    std::string close = is_record ? "}" : "]";
    advance();
    std::vector<std::pair<std::string, TypeRef>> fields;
    std::set<std::string> seen;
    TypeRef tail;
    if (!at_symbol(close) && !at_symbol("|")) {
      do {
        Span label_span = cur().span;
        std::string l = label("field label");
        if (!seen.insert(l).second) {
          throw SyntaxError("duplicate row label '" + l + "'", label_span);
        }
        expect_symbol(":");
        fields.emplace_back(std::move(l), type_expr());
      } while (accept_symbol(";"));
    }
    if (accept_symbol("|")) tail = type_expr();
    expect_symbol(close);
    TypeRef row = types::row(std::move(fields), std::move(tail));
    return is_record ? types::record(row) : types::variant(row);
  }
};

}  // namespace

bool is_infix_operator(std::string_view name) {
  return std::find(std::begin(kOperators), std::end(kOperators), name) !=
         std::end(kOperators);
}

TermRef parse_term(std::string_view source) { return Parser(source).whole_term(); }

TypeRef parse_type(std::string_view source) { return Parser(source).whole_type(); }

TopLevel parse_toplevel(std::string_view source) {
  return Parser(source).toplevel();
}

}  // namespace gradual
