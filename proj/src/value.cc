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


#include "gradual/value.h"

#include <fmt/format.h>

namespace gradual {

ValueEnv ValueEnv::extend(std::string name, ValueRef value) const {
  ValueEnv out;
  out.head_ = std::make_shared<const Frame>(Frame{std::move(name), std::move(value), head_});
  return out;
}

ValueRef ValueEnv::lookup(std::string_view name) const {
  for (const Frame* frame = head_.get(); frame; frame = frame->parent.get()) {
    if (frame->name == name) return frame->value;
  }
  return nullptr;
}

ValueRef Value::Record::get(std::string_view label) const {
  for (const auto& [name, value] : fields) {
    if (name == label) return value;
  }
  return nullptr;
}

ValueRef unit_value() {
  static const ValueRef unit = make_value(Value::Record{});
  return unit;
}

ValueRef make_bool(bool b) { return make_value(Value::Variant{b ? "True" : "False", unit_value()}); }

std::string tag_of(const Value& v) {
  static constexpr const char* kTags[] = {"Int",    "Double", "String",  "Date",
                                          "Currency", "Fun",  "Fun",     "Record",
                                          "Variant",  "Fun",  "ObsDouble", "Contract"};
  return kTags[v.node.index()];
}

namespace {

std::string render_double(double d) {
  std::string s = fmt::format("{}", d);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

// Renders `s` in parentheses when it has spaces at the top level.
std::string atom(std::string s) {
  if (s.find(' ') == std::string::npos || s.front() == '(' || s.front() == '{' ||
      s.front() == '"') {
    return s;
  }
  return "(" + s + ")";
}

}  // namespace

std::string render(const ObsNode& o) {
  if (auto* c = std::get_if<ObsNode::Const>(&o.node)) return "const " + render_double(c->value);
  if (auto* s = std::get_if<ObsNode::StockPrice>(&o.node)) {
    return fmt::format("stock_price {} {}", s->date.iso(), quote(s->name));
  }
  if (auto* s = std::get_if<ObsNode::Spot>(&o.node)) return "spot " + quote(s->name);
  const auto& l = std::get<ObsNode::Lift2>(o.node);
  auto side = [](const ObsNode& n) {
    std::string s = render(n);
    return std::holds_alternative<ObsNode::Lift2>(n.node) ? s : atom(s);
  };
  return fmt::format("({} {} {})", side(*l.lhs), l.op, side(*l.rhs));
}

std::string render(const ContractNode& c) {
  if (std::holds_alternative<ContractNode::Zero>(c.node)) return "Zero";
  if (auto* o = std::get_if<ContractNode::One>(&c.node)) return "One " + o->currency.code;
  if (auto* s = std::get_if<ContractNode::Scale>(&c.node)) {
    return fmt::format("Scale {} {}", atom(render(*s->amount)), atom(render(*s->contract)));
  }
  const auto& e = std::get<ContractNode::European>(c.node);
  return fmt::format("European {} {}", e.date.iso(), atom(render(*e.contract)));
}

std::string render(const Value& v) {
  if (auto* i = v.as<std::int64_t>()) return std::to_string(*i);
  if (auto* d = v.as<double>()) return render_double(*d);
  if (auto* s = v.as<std::string>()) return quote(*s);
  if (auto* d = v.as<Date>()) return d->iso();
  if (auto* c = v.as<Currency>()) return c->code;
  if (v.callable()) return "<fun>";
  if (auto* r = v.as<Value::Record>()) {
    std::string out = "{";
    for (std::size_t i = 0; i < r->fields.size(); ++i) {
      if (i) out += ", ";
      out += r->fields[i].first + " = " + render(*r->fields[i].second);
    }
    return out + "}";
  }
  if (auto* var = v.as<Value::Variant>()) {
    auto* payload = var->payload->as<Value::Record>();
    if (payload && payload->fields.empty()) return var->label;
    return var->label + " " + atom(render(*var->payload));
  }
  if (auto* o = v.as<ObsRef>()) return render(**o);
  return render(**v.as<ContractRef>());
}

bool obs_equal(const ObsNode& a, const ObsNode& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* c = std::get_if<ObsNode::Const>(&a.node)) {
    return c->value == std::get<ObsNode::Const>(b.node).value;
  }
  if (auto* s = std::get_if<ObsNode::StockPrice>(&a.node)) {
    const auto& t = std::get<ObsNode::StockPrice>(b.node);
    return s->date == t.date && s->name == t.name;
  }
  if (auto* s = std::get_if<ObsNode::Spot>(&a.node)) {
    return s->name == std::get<ObsNode::Spot>(b.node).name;
  }
  const auto& l = std::get<ObsNode::Lift2>(a.node);
  const auto& r = std::get<ObsNode::Lift2>(b.node);
  return l.op == r.op && obs_equal(*l.lhs, *r.lhs) && obs_equal(*l.rhs, *r.rhs);
}

bool contract_equal(const ContractNode& a, const ContractNode& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* o = std::get_if<ContractNode::One>(&a.node)) {
    return o->currency == std::get<ContractNode::One>(b.node).currency;
  }
  if (auto* s = std::get_if<ContractNode::Scale>(&a.node)) {
    const auto& t = std::get<ContractNode::Scale>(b.node);
    return obs_equal(*s->amount, *t.amount) && contract_equal(*s->contract, *t.contract);
  }
  if (auto* e = std::get_if<ContractNode::European>(&a.node)) {
    const auto& f = std::get<ContractNode::European>(b.node);
    return e->date == f.date && contract_equal(*e->contract, *f.contract);
  }
  return true;
}

RuntimeTypeError::RuntimeTypeError(std::string expected, std::string actual, Span blame)
    : std::runtime_error(
          fmt::format("runtime type error: expected {}, got {}", expected, actual)),
      expected_(std::move(expected)),
      actual_(std::move(actual)),
      blame_(blame) {}

}  // namespace gradual
