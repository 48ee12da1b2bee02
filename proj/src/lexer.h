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

#ifndef GRADUAL_LEXER_H_
#define GRADUAL_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "gradual/syntax.h"

namespace gradual::detail {

enum class Tok {
  kIdent,       // lowercase-initial identifier
  kUpper,       // uppercase-initial identifier
  kInt,
  kDouble,
  kString,
  kDate,
  kKeyword,     // let rec in match with fun mu eps
  kSymbol,      // punctuation and operators
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // decoded text for strings, spelling otherwise
  Span span;
};

// Splits `source` into tokens. Unicode spellings (λ → μ ε Π Σ) are
// normalized to their ASCII equivalents.
std::vector<Token> tokenize(std::string_view source);

}  // namespace gradual::detail

#endif  // GRADUAL_LEXER_H_
