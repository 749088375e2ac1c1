// Copyright 2026 The hopsu Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cassert>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hopsu {

/// A simple type: either a base type or an arrow `arg -> result`.
/// Values are immutable and cheap to copy (shared nodes).
class Type {
 public:
  Type() = default;

  static Type base(std::string name) {
    auto n = std::make_shared<Node>();
    n->name = std::move(name);
    return Type(std::move(n));
  }

  static Type arrow(Type arg, Type result) {
    auto n = std::make_shared<Node>();
    n->arg = std::move(arg.node_);
    n->result = std::move(result.node_);
    return Type(std::move(n));
  }

  bool valid() const { return node_ != nullptr; }
  bool is_base() const { return node_->arg == nullptr; }
  bool is_arrow() const { return !is_base(); }

  const std::string& name() const {
    assert(is_base());
    return node_->name;
  }
  Type arg() const {
    assert(is_arrow());
    return Type(node_->arg);
  }
  Type result() const {
    assert(is_arrow());
    return Type(node_->result);
  }

  /// Argument types of the arity decomposition t1 -> ... -> tn -> base.
  std::vector<Type> arguments() const {
    std::vector<Type> out;
    for (Type t = *this; t.is_arrow(); t = t.result()) out.push_back(t.arg());
    return out;
  }

  /// The base type at the end of the arrow chain.
  Type target() const {
    Type t = *this;
    while (t.is_arrow()) t = t.result();
    return t;
  }

  std::size_t arity() const {
    std::size_t n = 0;
    for (Type t = *this; t.is_arrow(); t = t.result()) ++n;
    return n;
  }

  friend bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.is_base() != b.is_base()) return false;
    if (a.is_base()) return a.name() == b.name();
    return a.arg() == b.arg() && a.result() == b.result();
  }

  /// Rendering in the problem-file grammar; arrows associate to the right.
  std::string str() const {
    if (!node_) return "<invalid>";
    if (is_base()) return name();
    Type a = arg();
    std::string lhs = a.is_arrow() ? "(" + a.str() + ")" : a.str();
    return lhs + " -> " + result().str();
  }

 private:
  struct Node {
    std::string name;
    std::shared_ptr<const Node> arg;
    std::shared_ptr<const Node> result;
  };

  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Builds `args[0] -> ... -> args[n-1] -> result`.
inline Type arrows(std::span<const Type> args, Type result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it)
    result = Type::arrow(*it, result);
  return result;
}

}  // namespace hopsu
