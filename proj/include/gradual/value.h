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


#ifndef GRADUAL_VALUE_H_
#define GRADUAL_VALUE_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "gradual/syntax.h"

namespace gradual {

struct Value;
using ValueRef = std::shared_ptr<const Value>;

struct ObsNode;
using ObsRef = std::shared_ptr<const ObsNode>;

// Observables are symbolic; sampling against a price table gives a number.
struct ObsNode {
  struct Const {
    double value;
  };
  // The price of `name` fixed on `date`.
  struct StockPrice {
    Date date;
    std::string name;
  };
  // The price of `name` on whatever date the observable is sampled.
  struct Spot {
    std::string name;
  };
  struct Lift2 {
    char op;
    ObsRef lhs;
    ObsRef rhs;
  };
  using Node = std::variant<Const, StockPrice, Spot, Lift2>;
  Node node;
};

struct ContractNode;
using ContractRef = std::shared_ptr<const ContractNode>;

struct ContractNode {
  struct Zero {};
  struct One {
    Currency currency;
  };
  struct Scale {
    ObsRef amount;
    ContractRef contract;
  };
  struct European {
    Date date;
    ContractRef contract;
  };
  using Node = std::variant<Zero, One, Scale, European>;
  Node node;
};

class Evaluator;
struct Cast;
using CastTable = std::unordered_map<const Term*, Cast>;

// Persistent name -> value chain.
class ValueEnv {
 public:
  ValueEnv extend(std::string name, ValueRef value) const;
  ValueRef lookup(std::string_view name) const;

 private:
  struct Frame {
    std::string name;
    ValueRef value;
    std::shared_ptr<const Frame> parent;
  };
  std::shared_ptr<const Frame> head_;
};

struct BuiltinDef {
  std::string name;
  std::string type;
  bool numeric = false;
  int arity = 0;
  ValueRef (*fn)(Evaluator& ev, const std::vector<ValueRef>& args,
                 const std::vector<Span>& spans) = nullptr;
};

struct Value {
  struct Closure {
    std::string param;
    TermRef body;
    ValueEnv env;
    std::shared_ptr<const CastTable> casts;
    // Set for `let rec`: the body sees `self_value` under the name `self`.
    // The value may be the closure wrapped by annotation casts. It is held
    // weakly so the closure does not own itself.
    std::string self;
    std::shared_ptr<std::weak_ptr<const Value>> self_value;
  };
  struct Builtin {
    const BuiltinDef* def;
    std::vector<ValueRef> args;
    std::vector<Span> spans;
  };
  struct Record {
    std::vector<std::pair<std::string, ValueRef>> fields;
    ValueRef get(std::string_view label) const;
  };
  struct Variant {
    std::string label;
    ValueRef payload;
  };
  // A function that crossed a dyn boundary: calls are checked both ways.
  struct Guard {
    ValueRef inner;
    TypeRef source;
    TypeRef target;
    Span blame;
  };

  using Node = std::variant<std::int64_t, double, std::string, Date, Currency, Closure, Builtin,
                            Record, Variant, Guard, ObsRef, ContractRef>;
  Node node;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
  bool callable() const { return is<Closure>() || is<Builtin>() || is<Guard>(); }
};

template <typename T>
ValueRef make_value(T node) {
  return std::make_shared<const Value>(Value{std::move(node)});
}

ValueRef unit_value();
ValueRef make_bool(bool b);

// The runtime tag used by dynamic_to_type and in error messages.
std::string tag_of(const Value& v);

// Source-like rendering. Strings are quoted.
std::string render(const Value& v);
std::string render(const ObsNode& o);
std::string render(const ContractNode& c);

bool obs_equal(const ObsNode& a, const ObsNode& b);
bool contract_equal(const ContractNode& a, const ContractNode& b);

class RuntimeTypeError : public std::runtime_error {
 public:
  RuntimeTypeError(std::string expected, std::string actual, Span blame);
  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }
  const Span& blame() const { return blame_; }

 private:
  std::string expected_;
  std::string actual_;
  Span blame_;
};

class RuntimeError : public std::runtime_error {
 public:
  RuntimeError(const std::string& message, Span span) : std::runtime_error(message), span_(span) {}
  const Span& span() const { return span_; }

 private:
  Span span_;
};

}  // namespace gradual

#endif  // GRADUAL_VALUE_H_
