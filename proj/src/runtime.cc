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


#include "gradual/runtime.h"

#include <cmath>
#include <compare>
#include <sstream>

#include <fmt/format.h>

namespace gradual {

// ---------------------------------------------------------------------------
// Prices

void PriceTable::add(const std::string& name, Date date, double price) {
  prices_[name][date] = price;
}

std::optional<double> PriceTable::lookup(const std::string& name, Date date) const {
  auto series = prices_.find(name);
  if (series == prices_.end()) return std::nullopt;
  auto it = series->second.upper_bound(date);
  if (it == series->second.begin()) return std::nullopt;
  return std::prev(it)->second;
}

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

PriceTable PriceTable::parse(std::istream& in) {
  PriceTable table;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto bad = [&](const char* what) {
      return std::runtime_error(fmt::format("price table line {}: {}", number, what));
    };
    auto first = line.find(',');
    auto last = line.rfind(',');
    if (first == std::string::npos || first == last) throw bad("expected date,name,price");
    auto date = Date::parse(trim(line.substr(0, first)));
    if (!date) throw bad("malformed date");
    std::string name = trim(line.substr(first + 1, last - first - 1));
    if (name.empty()) throw bad("empty name");
    std::string price_text = trim(line.substr(last + 1));
    double price = 0;
    std::size_t used = 0;
    try {
      price = std::stod(price_text, &used);
    } catch (const std::exception&) {
      throw bad("malformed price");
    }
    if (used != price_text.size() || !std::isfinite(price)) throw bad("malformed price");
    table.add(name, *date, price);
  }
  return table;
}

PriceTable PriceTable::defaults() {
  PriceTable table;
  // Daily fixings for January 2021.
  for (int day = 4; day <= 29; ++day) {
    Date date = *Date::from_ymd(2021, 1, day);
    table.add("ABC Co.", date, 100.0 + (day - 4) * 1.5);
    table.add("XYZ Ltd.", date, 50.0 - (day - 4) * 0.25);
  }
  return table;
}

double Evaluator::sample(const ObsNode& obs, Date date) const {
  auto price = [&](const std::string& name, Date at) {
    auto p = prices_.lookup(name, at);
    if (!p) throw RuntimeError(fmt::format("no price for {} on {}", name, at.iso()), {});
    return *p;
  };
  if (auto* c = std::get_if<ObsNode::Const>(&obs.node)) return c->value;
  if (auto* s = std::get_if<ObsNode::StockPrice>(&obs.node)) return price(s->name, s->date);
  if (auto* s = std::get_if<ObsNode::Spot>(&obs.node)) return price(s->name, date);
  const auto& l = std::get<ObsNode::Lift2>(obs.node);
  double a = sample(*l.lhs, date);
  double b = sample(*l.rhs, date);
  switch (l.op) {
    case '+':
      return a + b;
    case '-':
      return a - b;
    case '*':
      return a * b;
    default:
      return a / b;
  }
}

// ---------------------------------------------------------------------------
// Casts

namespace {

bool is_dyn(const TypeRef& t) { return t->is<SurfaceType::Dyn>(); }

bool is_unknown(const TypeRef& t) { return t->is<SurfaceType::Dyn>() || t->is<SurfaceType::Var>(); }

TypeRef substitute(const TypeRef& t, const std::string& name, const TypeRef& with) {
  return std::visit(
      [&](const auto& n) -> TypeRef {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, SurfaceType::Var>) {
          return n.name == name ? with : t;
        } else if constexpr (std::is_same_v<N, SurfaceType::Con>) {
          std::vector<TypeRef> args;
          for (const auto& a : n.args) args.push_back(substitute(a, name, with));
          return types::con(n.name, std::move(args));
        } else if constexpr (std::is_same_v<N, SurfaceType::Arrow>) {
          return types::arrow(substitute(n.domain, name, with), substitute(n.codomain, name, with));
        } else if constexpr (std::is_same_v<N, SurfaceType::Record>) {
          return types::record(substitute(n.row, name, with));
        } else if constexpr (std::is_same_v<N, SurfaceType::Variant>) {
          return types::variant(substitute(n.row, name, with));
        } else if constexpr (std::is_same_v<N, SurfaceType::RowField>) {
          return types::field(n.label, substitute(n.type, name, with),
                              substitute(n.tail, name, with));
        } else if constexpr (std::is_same_v<N, SurfaceType::Mu>) {
          return n.var == name ? t : types::mu(n.var, substitute(n.body, name, with));
        } else {
          return t;
        }
      },
      t->node);
}

TypeRef unfold(const TypeRef& t) {
  const auto* m = t->as<SurfaceType::Mu>();
  return m ? unfold(substitute(m->body, m->var, t)) : t;
}

// Field type of `label` in a row, or nullptr. `closed` reports whether the
// row ends in the empty row.
TypeRef row_lookup(TypeRef row, const std::string& label, bool* closed = nullptr) {
  while (const auto* f = row->as<SurfaceType::RowField>()) {
    if (f->label == label) return f->type;
    row = f->tail;
  }
  if (closed) *closed = row->is<SurfaceType::EmptyRow>();
  return nullptr;
}

const TypeRef& dyn_arrow() {
  static const TypeRef t = types::arrow(types::dyn(), types::dyn());
  return t;
}

std::string describe(const TypeRef& t) { return pretty_type(*t); }

// First-order check of the value's tag against the head of `t`.
void check_head(const Value& v, const TypeRef& t, Span blame) {
  auto fail = [&] { throw RuntimeTypeError(describe(t), tag_of(v), blame); };
  if (t->is<SurfaceType::Arrow>()) {
    if (!v.callable()) fail();
  } else if (t->is<SurfaceType::Record>()) {
    if (!v.is<Value::Record>()) fail();
  } else if (t->is<SurfaceType::Variant>()) {
    if (!v.is<Value::Variant>()) fail();
  } else if (const auto* c = t->as<SurfaceType::Con>()) {
    static const std::map<std::string, std::string, std::less<>> kTags = {
        {"Int", "Int"},         {"Double", "Double"},     {"String", "String"},
        {"Date", "Date"},       {"Currency", "Currency"}, {"Contract", "Contract"},
        {"Obs", "ObsDouble"}};
    auto it = kTags.find(c->name);
    if (it != kTags.end() && tag_of(v) != it->second) fail();
  }
}

}  // namespace

ValueRef Evaluator::cast(const ValueRef& v, const TypeRef& source_in, const TypeRef& target_in,
                         Span blame) {
  TypeRef source = unfold(source_in);
  TypeRef target = unfold(target_in);
  if (target->is<SurfaceType::Var>()) return v;

  if (is_dyn(target)) {
    // Embedding into `?`: static parts of the value stay protected.
    if (source->is<SurfaceType::Arrow>()) {
      if (structurally_equal(*source, *dyn_arrow())) return v;
      return make_value(Value::Guard{v, source, dyn_arrow(), blame});
    }
    if (const auto* r = source->as<SurfaceType::Record>(); r && v->is<Value::Record>()) {
      Value::Record out;
      for (const auto& [label, field] : v->as<Value::Record>()->fields) {
        TypeRef from = row_lookup(r->row, label);
        out.fields.emplace_back(label, from ? cast(field, from, types::dyn(), blame) : field);
      }
      return make_value(std::move(out));
    }
    if (const auto* s = source->as<SurfaceType::Variant>(); s && v->is<Value::Variant>()) {
      const auto& var = *v->as<Value::Variant>();
      TypeRef from = row_lookup(s->row, var.label);
      if (!from) return v;
      return make_value(Value::Variant{var.label, cast(var.payload, from, types::dyn(), blame)});
    }
    return v;
  }

  // Statically typed values always pass; this matters only for `?` sources.
  check_head(*v, target, blame);

  if (target->is<SurfaceType::Arrow>()) {
    TypeRef from = is_unknown(source) ? dyn_arrow() : source;
    if (structurally_equal(*from, *target)) return v;
    return make_value(Value::Guard{v, from, target, blame});
  }
  if (const auto* r = target->as<SurfaceType::Record>()) {
    const auto* from_record = source->as<SurfaceType::Record>();
    Value::Record out = *v->as<Value::Record>();
    for (auto row = r->row; const auto* f = row->as<SurfaceType::RowField>(); row = f->tail) {
      ValueRef field = out.get(f->label);
      if (!field) {
        throw RuntimeTypeError(describe(target), fmt::format("record without field {}", f->label),
                               blame);
      }
      TypeRef from = from_record ? row_lookup(from_record->row, f->label) : nullptr;
      ValueRef converted = cast(field, from ? from : types::dyn(), f->type, blame);
      for (auto& [label, value] : out.fields) {
        if (label == f->label) value = converted;
      }
    }
    return make_value(std::move(out));
  }
  if (const auto* s = target->as<SurfaceType::Variant>()) {
    const auto& var = *v->as<Value::Variant>();
    bool closed = false;
    TypeRef to = row_lookup(s->row, var.label, &closed);
    if (!to) {
      if (closed) {
        throw RuntimeTypeError(describe(target), fmt::format("variant {}", var.label), blame);
      }
      return v;
    }
    const auto* from_variant = source->as<SurfaceType::Variant>();
    TypeRef from = from_variant ? row_lookup(from_variant->row, var.label) : nullptr;
    return make_value(Value::Variant{var.label, cast(var.payload, from ? from : types::dyn(), to, blame)});
  }
  return v;
}

ValueRef Evaluator::call_guard(const Value::Guard& g, const ValueRef& arg, Span arg_span) {
  const auto& s = *g.source->as<SurfaceType::Arrow>();
  const auto& t = *g.target->as<SurfaceType::Arrow>();
  ValueRef inner_arg = cast(arg, t.domain, s.domain, arg_span);
  ValueRef result = apply(g.inner, inner_arg, arg_span);
  return cast(result, s.codomain, t.codomain, g.blame);
}

// ---------------------------------------------------------------------------
// Evaluation

ValueRef Evaluator::eval(const TermRef& t, const ValueEnv& env,
                         std::shared_ptr<const CastTable> casts) {
  if (!casts) casts = std::make_shared<const CastTable>();
  return eval_term(*t, env, casts);
}

ValueRef Evaluator::apply(const ValueRef& fn, const ValueRef& arg, Span arg_span) {
  if (const auto* c = fn->as<Value::Closure>()) {
    ValueEnv env = c->env;
    if (!c->self.empty()) {
      ValueRef self = c->self_value ? c->self_value->lock() : nullptr;
      env = env.extend(c->self, self ? self : fn);
    }
    return eval_term(*c->body, env.extend(c->param, arg), c->casts);
  }
  if (const auto* g = fn->as<Value::Guard>()) return call_guard(*g, arg, arg_span);
  if (const auto* b = fn->as<Value::Builtin>()) {
    Value::Builtin next = *b;
    next.args.push_back(arg);
    next.spans.push_back(arg_span);
    if (static_cast<int>(next.args.size()) < b->def->arity) return make_value(std::move(next));
    return b->def->fn(*this, next.args, next.spans);
  }
  throw RuntimeTypeError("Fun", tag_of(*fn), arg_span);
}

namespace {

const Cast* find_cast(const CastTable& casts, const Term& t) {
  auto it = casts.find(&t);
  return it == casts.end() ? nullptr : &it->second;
}

}  // namespace

ValueRef Evaluator::eval_term(const Term& t, const ValueEnv& env,
                              const std::shared_ptr<const CastTable>& casts) {
  if (const auto* v = t.as<Term::Var>()) {
    ValueRef value = env.lookup(v->name);
    if (!value) throw RuntimeError(fmt::format("unbound variable {}", v->name), t.span);
    return value;
  }
  if (const auto* l = t.as<Term::Lambda>()) {
    return make_value(Value::Closure{l->param, l->body, env, casts, {}, nullptr});
  }
  if (const auto* a = t.as<Term::Apply>()) {
    ValueRef fn = eval_term(*a->fn, env, casts);
    ValueRef arg = eval_term(*a->arg, env, casts);
    if (!fn->callable()) throw RuntimeTypeError("Fun", tag_of(*fn), a->fn->span);
    if (const Cast* c = find_cast(*casts, t)) arg = cast(arg, c->source, c->target, a->arg->span);
    return apply(fn, arg, a->arg->span);
  }
  if (const auto* l = t.as<Term::Let>()) {
    ValueRef bound = l->recursive ? eval_recursive(*l->bound, l->name, env, casts)
                                  : eval_term(*l->bound, env, casts);
    return eval_term(*l->body, env.extend(l->name, bound), casts);
  }
  if (const auto* a = t.as<Term::Annot>()) {
    ValueRef inner = eval_term(*a->term, env, casts);
    if (const Cast* c = find_cast(*casts, t)) return cast(inner, c->source, c->target, a->term->span);
    return inner;
  }
  if (const auto* r = t.as<Term::Record>()) {
    Value::Record out;
    for (const auto& [label, field] : r->fields) {
      out.fields.emplace_back(label, eval_term(*field, env, casts));
    }
    return make_value(std::move(out));
  }
  if (const auto* p = t.as<Term::Project>()) {
    ValueRef record = eval_term(*p->record, env, casts);
    const auto* r = record->as<Value::Record>();
    if (!r) throw RuntimeTypeError("Record", tag_of(*record), p->record->span);
    ValueRef field = r->get(p->label);
    if (!field) {
      throw RuntimeTypeError(fmt::format("record with field {}", p->label), render(*record),
                             p->record->span);
    }
    return field;
  }
  if (const auto* i = t.as<Term::Inject>()) {
    return make_value(Value::Variant{i->label, eval_term(*i->payload, env, casts)});
  }
  if (const auto* m = t.as<Term::Match>()) {
    ValueRef scrutinee = eval_term(*m->scrutinee, env, casts);
    const auto* v = scrutinee->as<Value::Variant>();
    if (!v) throw RuntimeTypeError("Variant", tag_of(*scrutinee), m->scrutinee->span);
    for (const auto& arm : m->arms) {
      if (arm.label != v->label) continue;
      ValueEnv inner = arm.binder.empty() ? env : env.extend(arm.binder, v->payload);
      return eval_term(*arm.body, inner, casts);
    }
    std::string labels;
    for (const auto& arm : m->arms) labels += (labels.empty() ? "" : " | ") + arm.label;
    throw RuntimeTypeError(fmt::format("variant {}", labels), fmt::format("variant {}", v->label),
                           m->scrutinee->span);
  }
  const auto& lit = std::get<Literal>(t.node);
  return std::visit([](const auto& x) { return make_value(x); }, lit.value);
}

ValueRef Evaluator::eval_recursive(const Term& t, const std::string& name, const ValueEnv& env,
                                   const std::shared_ptr<const CastTable>& casts) {
  // The bound term is a lambda, possibly under annotations.
  std::vector<const Term*> annotations;
  const Term* inner = &t;
  while (const auto* a = inner->as<Term::Annot>()) {
    annotations.push_back(inner);
    inner = a->term.get();
  }
  const auto* l = inner->as<Term::Lambda>();
  if (!l) throw RuntimeError("let rec expects a function", t.span);
  auto cell = std::make_shared<std::weak_ptr<const Value>>();
  ValueRef value = make_value(Value::Closure{l->param, l->body, env, casts, name, cell});
  for (auto it = annotations.rbegin(); it != annotations.rend(); ++it) {
    const auto& a = *(*it)->as<Term::Annot>();
    if (const Cast* c = find_cast(*casts, **it)) value = cast(value, c->source, c->target, a.term->span);
  }
  *cell = value;
  return value;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

using Args = std::vector<ValueRef>;
using Spans = std::vector<Span>;

template <typename T>
const T& expect(const ValueRef& v, const char* expected, Span span) {
  const T* x = v->as<T>();
  if (!x) throw RuntimeTypeError(expected, tag_of(*v), span);
  return *x;
}

ObsRef make_obs(ObsNode::Node node) { return std::make_shared<const ObsNode>(ObsNode{std::move(node)}); }

ContractRef make_contract(ContractNode::Node node) {
  return std::make_shared<const ContractNode>(ContractNode{std::move(node)});
}

ValueRef obs_value(ObsNode::Node node) { return make_value(make_obs(std::move(node))); }

ValueRef contract_value(ContractNode::Node node) {
  return make_value(make_contract(std::move(node)));
}

ValueRef arithmetic(char op, const Args& a, const Spans& s) {
  const Value& x = *a[0];
  const Value& y = *a[1];
  if (!x.is<std::int64_t>() && !x.is<double>() && !x.is<ObsRef>()) {
    throw RuntimeTypeError("a number", tag_of(x), s[0]);
  }
  if (tag_of(x) != tag_of(y)) throw RuntimeTypeError(tag_of(x), tag_of(y), s[1]);
  if (const auto* i = x.as<std::int64_t>()) {
    std::int64_t j = *y.as<std::int64_t>();
    switch (op) {
      case '+':
        return make_value(static_cast<std::int64_t>(static_cast<std::uint64_t>(*i) + j));
      case '-':
        return make_value(static_cast<std::int64_t>(static_cast<std::uint64_t>(*i) - j));
      case '*':
        return make_value(static_cast<std::int64_t>(static_cast<std::uint64_t>(*i) * j));
      default:
        if (j == 0) throw RuntimeError("division by zero", s[1]);
        if (j == -1) return make_value(static_cast<std::int64_t>(0 - static_cast<std::uint64_t>(*i)));
        return make_value(*i / j);
    }
  }
  if (const auto* d = x.as<double>()) {
    double e = *y.as<double>();
    switch (op) {
      case '+':
        return make_value(*d + e);
      case '-':
        return make_value(*d - e);
      case '*':
        return make_value(*d * e);
      default:
        return make_value(*d / e);
    }
  }
  return obs_value(ObsNode::Lift2{op, *x.as<ObsRef>(), *y.as<ObsRef>()});
}

std::partial_ordering compare_values(const Value& x, const Value& y, Span span);

std::partial_ordering compare_fields(const Value::Record& a, const Value::Record& b, Span span) {
  auto sorted = [](const Value::Record& r) {
    auto fields = r.fields;
    std::sort(fields.begin(), fields.end(),
              [](const auto& l, const auto& m) { return l.first < m.first; });
    return fields;
  };
  auto fa = sorted(a);
  auto fb = sorted(b);
  for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
    if (auto c = fa[i].first <=> fb[i].first; c != 0) return c;
    if (auto c = compare_values(*fa[i].second, *fb[i].second, span); c != 0) return c;
  }
  return fa.size() <=> fb.size();
}

std::partial_ordering compare_values(const Value& x, const Value& y, Span span) {
  if (tag_of(x) != tag_of(y)) throw RuntimeTypeError(tag_of(x), tag_of(y), span);
  if (x.callable()) throw RuntimeError("functions cannot be compared", span);
  if (const auto* i = x.as<std::int64_t>()) return *i <=> *y.as<std::int64_t>();
  if (const auto* d = x.as<double>()) return *d <=> *y.as<double>();
  if (const auto* s = x.as<std::string>()) return *s <=> *y.as<std::string>();
  if (const auto* d = x.as<Date>()) return *d <=> *y.as<Date>();
  if (const auto* c = x.as<Currency>()) return *c <=> *y.as<Currency>();
  if (const auto* r = x.as<Value::Record>()) return compare_fields(*r, *y.as<Value::Record>(), span);
  if (const auto* v = x.as<Value::Variant>()) {
    const auto& w = *y.as<Value::Variant>();
    if (auto c = v->label <=> w.label; c != 0) return c;
    return compare_values(*v->payload, *w.payload, span);
  }
  // Observables and contracts are compared for equality only.
  bool equal = x.is<ObsRef>() ? obs_equal(**x.as<ObsRef>(), **y.as<ObsRef>())
                              : contract_equal(**x.as<ContractRef>(), **y.as<ContractRef>());
  return equal ? std::partial_ordering::equivalent : std::partial_ordering::unordered;
}

template <typename Pred>
ValueRef comparison(const Args& a, const Spans& s, Pred pred) {
  return make_bool(pred(compare_values(*a[0], *a[1], s[1])));
}

ValueRef ordering(const Args& a, const Spans& s, bool (*pred)(std::partial_ordering)) {
  if (a[0]->is<ObsRef>() || a[0]->is<ContractRef>()) {
    throw RuntimeError(fmt::format("{} values have no order", tag_of(*a[0])), s[0]);
  }
  return comparison(a, s, pred);
}

ValueRef make_list(const std::vector<ValueRef>& items) {
  ValueRef list = make_value(Value::Variant{"Nil", unit_value()});
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    Value::Record cell;
    cell.fields = {{"head", *it}, {"tail", list}};
    list = make_value(Value::Variant{"Cons", make_value(std::move(cell))});
  }
  return list;
}

bool lt(std::partial_ordering c) { return c < 0; }
bool le(std::partial_ordering c) { return c <= 0; }
bool gt(std::partial_ordering c) { return c > 0; }
bool ge(std::partial_ordering c) { return c >= 0; }

const char* const kBool = "a -> a -> [True : {}; False : {} | r]";

}  // namespace

ValueRef dynamic_to_type(const ValueRef& v) {
  ValueRef payload = unit_value();
  if (const auto* r = v->as<Value::Record>()) {
    std::vector<ValueRef> labels;
    for (const auto& field : r->fields) labels.push_back(make_value(field.first));
    payload = make_list(labels);
  } else if (const auto* var = v->as<Value::Variant>()) {
    payload = make_value(var->label);
  }
  return make_value(Value::Variant{tag_of(*v), payload});
}

ValueRef dyn_obs_mul(const ValueRef& x, const ValueRef& y, Span y_span) {
  const auto& amount = *x->as<ObsRef>();
  if (const auto* c = y->as<ContractRef>()) return contract_value(ContractNode::Scale{amount, *c});
  if (const auto* o = y->as<ObsRef>()) return obs_value(ObsNode::Lift2{'*', amount, *o});
  throw RuntimeTypeError("Contract or ObsDouble", tag_of(*y), y_span);
}

std::string any_to_string(const ValueRef& v) {
  if (const auto* s = v->as<std::string>()) return *s;
  return render(*v);
}

const std::vector<BuiltinDef>& builtin_defs() {
  static const std::vector<BuiltinDef> defs = {
      {"zero", "Contract", false, 0,
       [](Evaluator&, const Args&, const Spans&) { return contract_value(ContractNode::Zero{}); }},
      {"one", "Currency -> Contract", false, 1,
       [](Evaluator&, const Args& a, const Spans& s) {
         return contract_value(ContractNode::One{expect<Currency>(a[0], "Currency", s[0])});
       }},
      {"scale", "Obs Double -> Contract -> Contract", false, 2,
       [](Evaluator&, const Args& a, const Spans& s) {
         return contract_value(ContractNode::Scale{expect<ObsRef>(a[0], "Obs Double", s[0]),
                                                   expect<ContractRef>(a[1], "Contract", s[1])});
       }},
      {"european", "Date -> Contract -> Contract", false, 2,
       [](Evaluator&, const Args& a, const Spans& s) {
         return contract_value(ContractNode::European{expect<Date>(a[0], "Date", s[0]),
                                                      expect<ContractRef>(a[1], "Contract", s[1])});
       }},
      {"stock_price", "Date -> String -> Obs Double", false, 2,
       [](Evaluator& ev, const Args& a, const Spans& s) {
         Date date = expect<Date>(a[0], "Date", s[0]);
         const auto& name = expect<std::string>(a[1], "String", s[1]);
         if (!ev.prices().lookup(name, date)) {
           throw RuntimeError(fmt::format("no price for {} on {}", name, date.iso()), s[1]);
         }
         return obs_value(ObsNode::StockPrice{date, name});
       }},
      {"spot", "String -> Obs Double", false, 1,
       [](Evaluator&, const Args& a, const Spans& s) {
         return obs_value(ObsNode::Spot{expect<std::string>(a[0], "String", s[0])});
       }},
      {"const", "Double -> Obs Double", false, 1,
       [](Evaluator&, const Args& a, const Spans& s) {
         return obs_value(ObsNode::Const{expect<double>(a[0], "Double", s[0])});
       }},
      {"obs", "Double -> Obs Double", false, 1,
       [](Evaluator&, const Args& a, const Spans& s) {
         return obs_value(ObsNode::Const{expect<double>(a[0], "Double", s[0])});
       }},
      {"sample", "Obs Double -> Date -> Double", false, 2,
       [](Evaluator& ev, const Args& a, const Spans& s) {
         const auto& o = expect<ObsRef>(a[0], "Obs Double", s[0]);
         Date date = expect<Date>(a[1], "Date", s[1]);
         try {
           return make_value(ev.sample(*o, date));
         } catch (const RuntimeError& e) {
           throw RuntimeError(e.what(), s[1]);
         }
       }},
      {"+", "a -> a -> a", true, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return arithmetic('+', a, s); }},
      {"-", "a -> a -> a", true, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return arithmetic('-', a, s); }},
      {"*", "a -> a -> a", true, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return arithmetic('*', a, s); }},
      {"/", "a -> a -> a", true, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return arithmetic('/', a, s); }},
      {"==", kBool, false, 2,
       [](Evaluator&, const Args& a, const Spans& s) {
         return comparison(a, s, [](std::partial_ordering c) { return c == 0; });
       }},
      {"!=", kBool, false, 2,
       [](Evaluator&, const Args& a, const Spans& s) {
         return comparison(a, s, [](std::partial_ordering c) { return c != 0; });
       }},
      {"<", kBool, false, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return ordering(a, s, lt); }},
      {"<=", kBool, false, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return ordering(a, s, le); }},
      {">", kBool, false, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return ordering(a, s, gt); }},
      {">=", kBool, false, 2,
       [](Evaluator&, const Args& a, const Spans& s) { return ordering(a, s, ge); }},
      {"**", "Obs Double -> ? -> ?", false, 2,
       [](Evaluator&, const Args& a, const Spans& s) {
         expect<ObsRef>(a[0], "Obs Double", s[0]);
         return dyn_obs_mul(a[0], a[1], s[1]);
       }},
      {"dynamic_to_type", "? -> ?", false, 1,
       [](Evaluator&, const Args& a, const Spans&) { return dynamic_to_type(a[0]); }},
      {"any_to_string", "? -> String", false, 1,
       [](Evaluator&, const Args& a, const Spans&) { return make_value(any_to_string(a[0])); }},
      {"int_to_double", "Int -> Double", false, 1,
       [](Evaluator&, const Args& a, const Spans& s) {
         return make_value(static_cast<double>(expect<std::int64_t>(a[0], "Int", s[0])));
       }},
      {"concat", "String -> String -> String", false, 2,
       [](Evaluator&, const Args& a, const Spans& s) {
         return make_value(expect<std::string>(a[0], "String", s[0]) +
                           expect<std::string>(a[1], "String", s[1]));
       }},
  };
  return defs;
}

Builtins builtins(TypeStore& store) {
  Builtins out;
  Evaluator nullary{PriceTable{}};
  for (const auto& def : builtin_defs()) {
    out.types = out.types.extend(def.name, builtin_scheme(store, def.type, def.numeric));
    ValueRef value = def.arity == 0 ? def.fn(nullary, {}, {})
                                    : make_value(Value::Builtin{&def, {}, {}});
    out.values = out.values.extend(def.name, std::move(value));
  }
  return out;
}

}  // namespace gradual
