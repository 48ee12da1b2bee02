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


#ifndef GRADUAL_TYPEGRAPH_H_
#define GRADUAL_TYPEGRAPH_H_

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gradual/syntax.h"

namespace gradual {

struct Kind {
  enum class Tag { kStar, kRow, kArrow };
  Tag tag = Tag::kStar;
  std::shared_ptr<const Kind> from;
  std::shared_ptr<const Kind> to;

  static Kind star();
  static Kind row();
  static Kind arrow(Kind from, Kind to);

  friend bool operator==(const Kind& a, const Kind& b);
};

std::string to_string(const Kind& kind);

class KindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KindEnv = std::map<std::string, Kind>;

// Constructors every session knows about, including the List alias.
const KindEnv& builtin_kinds();

// Type variables not bound by a mu get the kind their position demands.
Kind kind_check(const SurfaceType& type, const KindEnv& env = builtin_kinds());

using NodeId = std::uint32_t;

namespace ctor_names {
inline constexpr const char* kArrow = "->";
inline constexpr const char* kRecord = "Pi";
inline constexpr const char* kVariant = "Sigma";
}  // namespace ctor_names

struct TypeNode {
  struct Var {
    std::uint32_t id;
    // Set for operands of the overloaded arithmetic operators.
    bool numeric = false;
  };
  struct Dyn {
    std::uint32_t instance;
    bool canonical = false;
  };
  struct Ctor {
    std::string name;
    Kind kind;
  };
  struct App {
    NodeId op;
    NodeId arg;
  };
  struct RowField {
    std::string label;
    NodeId type;
    NodeId tail;
  };
  struct EmptyRow {};
  struct Mu {
    NodeId binder;
    NodeId body;
  };

  using Payload = std::variant<Var, Dyn, Ctor, App, RowField, EmptyRow, Mu>;
  Payload payload;
  NodeId parent;
  bool visited = false;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&payload);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(payload);
  }
};

struct Scheme {
  std::vector<NodeId> quantified;
  NodeId body;
};

// Hands out stable display names (a, b, ...) for variables and mu binders.
class TypeNamer {
 public:
  std::string name_for(NodeId rep);
  std::string fresh();

 private:
  std::unordered_map<NodeId, std::string> names_;
  std::uint32_t next_ = 0;
};

struct ResolveOptions {
  // Print recognisable list cycles as `List t`.
  bool fold_lists = false;
};

class TypeStore {
 public:
  TypeStore();
  TypeStore(const TypeStore&) = delete;
  TypeStore& operator=(const TypeStore&) = delete;

  std::size_t size() const { return nodes_.size(); }
  const TypeNode& node(NodeId id) const { return nodes_.at(id); }

  NodeId fresh_var();
  NodeId new_dyn();
  NodeId canonical_dyn() const { return canonical_dyn_; }
  NodeId ctor(const std::string& name);
  NodeId app(NodeId op, NodeId arg);
  NodeId arrow(NodeId domain, NodeId codomain);
  NodeId record(NodeId row);
  NodeId variant(NodeId row);
  NodeId field(const std::string& label, NodeId type, NodeId tail);
  NodeId empty_row();
  // A recursive node whose body is filled in later with set_mu_body.
  NodeId new_mu();
  void set_mu_body(NodeId mu, NodeId body);

  NodeId find(NodeId id);
  // Unions the two classes; the representative of `keep` stays representative.
  void merge(NodeId keep, NodeId absorb);

  void set_numeric(NodeId var);
  bool is_numeric(NodeId id);

  void mark_visited(NodeId id);
  bool was_visited(NodeId id);
  void clear_visited();

  // Builds graph nodes for a kind-checked type. Named variables are looked up
  // in and added to `vars`, so one map shares them across an annotation.
  NodeId intern(const SurfaceType& type, std::map<std::string, NodeId>* vars = nullptr);

  bool reaches_canonical_dyn(NodeId id);
  NodeId copy_dyn(NodeId id);
  // Like copy_dyn, but every dyn node is replaced, not only the canonical one.
  NodeId copy_every_dyn(NodeId id);

  // Whether `var` (a representative) is reachable from `id`.
  bool occurs(NodeId var, NodeId id);

  // Decomposes `Ctor a1 .. an` spines. Returns false for non-applications.
  bool spine(NodeId id, std::string* ctor, std::vector<NodeId>* args);
  bool is_arrow(NodeId id, NodeId* domain = nullptr, NodeId* codomain = nullptr);

  TypeRef resolve(NodeId id, ResolveOptions options = {});
  TypeRef resolve(NodeId id, TypeNamer& namer, ResolveOptions options = {});
  std::string show(NodeId id);

 private:
  NodeId add(TypeNode::Payload payload);
  NodeId intern_rec(const SurfaceType& type, std::map<std::string, NodeId>& vars);
  NodeId intern_list(NodeId element);
  bool reaches_dyn(NodeId id, bool any);
  NodeId copy_rec(NodeId id, std::unordered_map<NodeId, NodeId>& open_mus, bool any);

  std::vector<TypeNode> nodes_;
  std::map<std::string, NodeId> ctors_;
  std::vector<NodeId> visited_;
  NodeId canonical_dyn_ = 0;
  std::uint32_t next_var_ = 0;
  std::uint32_t next_dyn_ = 0;
};

}  // namespace gradual

#endif  // GRADUAL_TYPEGRAPH_H_
