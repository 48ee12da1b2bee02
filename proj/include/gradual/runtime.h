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


#ifndef GRADUAL_RUNTIME_H_
#define GRADUAL_RUNTIME_H_

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradual/infer.h"
#include "gradual/syntax.h"
#include "gradual/value.h"

namespace gradual {

// Daily closing prices keyed by instrument name.
class PriceTable {
 public:
  void add(const std::string& name, Date date, double price);
  // The latest price on or before `date`.
  std::optional<double> lookup(const std::string& name, Date date) const;
  bool empty() const { return prices_.empty(); }

  // `date,name,price` lines; `#` starts a comment. Throws std::runtime_error
  // naming the offending line.
  static PriceTable parse(std::istream& in);
  static PriceTable defaults();

 private:
  std::map<std::string, std::map<Date, double>> prices_;
};

class Evaluator {
 public:
  explicit Evaluator(PriceTable prices = PriceTable::defaults()) : prices_(std::move(prices)) {}

  const PriceTable& prices() const { return prices_; }

  ValueRef eval(const TermRef& t, const ValueEnv& env, std::shared_ptr<const CastTable> casts);
  ValueRef apply(const ValueRef& fn, const ValueRef& arg, Span arg_span);
  ValueRef cast(const ValueRef& v, const TypeRef& source, const TypeRef& target, Span blame);

  double sample(const ObsNode& obs, Date date) const;

 private:
  ValueRef eval_term(const Term& t, const ValueEnv& env, const std::shared_ptr<const CastTable>& casts);
  ValueRef eval_recursive(const Term& t, const std::string& name, const ValueEnv& env,
                          const std::shared_ptr<const CastTable>& casts);
  ValueRef call_guard(const Value::Guard& g, const ValueRef& arg, Span arg_span);

  PriceTable prices_;
};

ValueRef dynamic_to_type(const ValueRef& v);
ValueRef dyn_obs_mul(const ValueRef& x, const ValueRef& y, Span y_span);
std::string any_to_string(const ValueRef& v);

const std::vector<BuiltinDef>& builtin_defs();

struct Builtins {
  TypeEnv types;
  ValueEnv values;
};

// Types are interned into `store`.
Builtins builtins(TypeStore& store);

}  // namespace gradual

#endif  // GRADUAL_RUNTIME_H_
