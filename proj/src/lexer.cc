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

#include "lexer.h"

#include <array>
#include <cctype>

namespace gradual::detail {

namespace {

constexpr std::array<std::string_view, 7> kKeywords = {
    "let", "rec", "in", "match", "with", "fun", "mu"};

// Longest first so that `**` wins over `*` and `->` over `-`.
constexpr std::array<std::string_view, 26> kSymbols = {
    "**", "->", "=>", "<=", ">=", "==", "!=", "(", ")", "{", "}", "[", "]",
    ",",  ";",  ":",  ".",  "|",  "=",  "?",  "+", "-", "*", "/", "<", ">"};

struct Alias {
  std::string_view utf8;
  Tok kind;
  std::string_view ascii;
};

constexpr std::array<Alias, 7> kUnicode = {{
    {"\xCE\xBB", Tok::kKeyword, "fun"},   // λ
    {"\xE2\x86\x92", Tok::kSymbol, "->"}, // →
    {"\xCE\xBC", Tok::kKeyword, "mu"},    // μ
    {"\xCE\xB5", Tok::kUpper, "eps"},     // ε
    {"\xCF\xB5", Tok::kUpper, "eps"},     // ϵ
    {"\xCE\xA0", Tok::kUpper, "Pi"},      // Π
    {"\xCE\xA3", Tok::kUpper, "Sigma"},   // Σ
}};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t = next();
      bool end = t.kind == Tok::kEnd;
      out.push_back(std::move(t));
      if (end) break;
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
  bool prev_operand_ = false;

  char peek(std::size_t k = 0) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }
  void bump(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
      ++pos_;
    }
  }
  Span here() const {
    return Span{static_cast<std::uint32_t>(pos_),
                static_cast<std::uint32_t>(pos_), line_, col_};
  }

  void skip_blank() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else if (c == '#') {
        while (peek() != '\n' && peek() != '\0') bump();
      } else {
        return;
      }
    }
  }

  Token finish(Tok kind, std::string text, Span start) {
    start.end = static_cast<std::uint32_t>(pos_);
    prev_operand_ = kind == Tok::kIdent || kind == Tok::kUpper ||
                    kind == Tok::kInt || kind == Tok::kDouble ||
                    kind == Tok::kString || kind == Tok::kDate ||
                    (kind == Tok::kSymbol &&
                     (text == ")" || text == "}" || text == "]"));
    return Token{kind, std::move(text), start};
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  }

  bool digits_at(std::size_t offset, std::size_t count) const {
    for (std::size_t i = 0; i < count; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(peek(offset + i))))
        return false;
    }
    return true;
  }

  Token number(Span start, bool negative) {
    std::string text = negative ? "-" : "";
    if (negative) bump();
    // YYYY-MM-DD
    if (!negative && digits_at(0, 4) && peek(4) == '-' && digits_at(5, 2) &&
        peek(7) == '-' && digits_at(8, 2) && !ident_char(peek(10))) {
      std::string iso(src_.substr(pos_, 10));
      bump(10);
      if (!Date::parse(iso)) {
        start.end = static_cast<std::uint32_t>(pos_);
        throw SyntaxError("invalid date literal '" + iso + "'", start);
      }
      return finish(Tok::kDate, iso, start);
    }
    bool is_double = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      text += peek();
      bump();
    }
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_double = true;
      text += '.';
      bump();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        text += peek();
        bump();
      }
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      is_double = true;
      text += 'e';
      bump();
      if (peek() == '+' || peek() == '-') {
        text += peek();
        bump();
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        text += peek();
        bump();
      }
    }
    return finish(is_double ? Tok::kDouble : Tok::kInt, text, start);
  }

  Token string_literal(Span start) {
    bump();  // opening quote
    std::string text;
    for (;;) {
      char c = peek();
      if (c == '\0') throw SyntaxError("unterminated string literal", start);
      bump();
      if (c == '"') break;
      if (c == '\\') {
        char e = peek();
        bump();
        switch (e) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case '"': text += '"'; break;
          case '\\': text += '\\'; break;
          default:
            throw SyntaxError(std::string("unknown escape '\\") + e + "'",
                              here());
        }
      } else {
        text += c;
      }
    }
    return finish(Tok::kString, std::move(text), start);
  }

  Token next() {
    Span start = here();
    char c = peek();
    if (c == '\0') return finish(Tok::kEnd, "", start);
    for (const auto& a : kUnicode) {
      if (src_.substr(pos_, a.utf8.size()) == a.utf8) {
        bump(a.utf8.size());
        return finish(a.kind, std::string(a.ascii), start);
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(start, false);
    if (c == '-' && !prev_operand_ &&
        std::isdigit(static_cast<unsigned char>(peek(1)))) {
      return number(start, true);
    }
    if (c == '"') return string_literal(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (ident_char(peek())) {
        word += peek();
        bump();
      }
      for (auto k : kKeywords) {
        if (word == k) return finish(Tok::kKeyword, word, start);
      }
      if (word == "eps") return finish(Tok::kUpper, word, start);
      bool upper = std::isupper(static_cast<unsigned char>(word[0]));
      return finish(upper ? Tok::kUpper : Tok::kIdent, word, start);
    }
    for (auto s : kSymbols) {
      if (src_.substr(pos_, s.size()) == s) {
        bump(s.size());
        return finish(Tok::kSymbol, std::string(s), start);
      }
    }
    bump();
    start.end = static_cast<std::uint32_t>(pos_);
    throw SyntaxError(std::string("unexpected character '") + c + "'", start);
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

}  // namespace gradual::detail
