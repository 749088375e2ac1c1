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

// Simply-typed lambda terms with de Bruijn-indexed bound variables.
//
// Every variable and constant occurrence carries its type, so the type of
// any (possibly open) term is computable without a context. Bound variables
// and binders also carry a name hint that is used only for printing;
// equality ignores hints, which makes `==` alpha-equivalence.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopsu/type.hpp"

namespace hopsu {

enum class TermKind { Free, Const, Bound, Abs, App };

class Term {
 public:
  Term() = default;

  static Term free(std::string name, Type type) {
    return make(TermKind::Free, std::move(name), std::move(type), 0, {}, {});
  }
  static Term constant(std::string name, Type type) {
    return make(TermKind::Const, std::move(name), std::move(type), 0, {}, {});
  }
  /// De Bruijn index `index` (0 = innermost enclosing binder).
  static Term bound(std::uint32_t index, Type type, std::string hint = "x") {
    return make(TermKind::Bound, std::move(hint), std::move(type), index, {}, {});
  }
  static Term abs(std::string hint, Type binder_type, Term body) {
    return make(TermKind::Abs, std::move(hint), std::move(binder_type), 0,
                std::move(body), {});
  }
  static Term app(Term fn, Term arg) {
    return make(TermKind::App, {}, {}, 0, std::move(fn), std::move(arg));
  }
  /// `head arg1 ... argn`.
  static Term apply(Term head, std::span<const Term> args) {
    for (const Term& a : args) head = app(std::move(head), a);
    return head;
  }

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }

  /// Symbol name for Free/Const; name hint for Bound/Abs.
  const std::string& name() const;
  /// Symbol type for Free/Const/Bound; binder type for Abs.
  const Type& type() const;
  std::uint32_t index() const;
  const Term& body() const;
  const Term& fn() const { return body(); }
  const Term& arg() const;

  /// One more than the largest loose de Bruijn index; 0 for locally closed terms.
  std::uint32_t loose() const;
  bool has_free() const;
  /// size(x) = size(f) = 1, size(t s) = size(t) + size(s), size(\x.t) = 1 + size(t).
  std::size_t size() const;

  bool same_node(const Term& o) const { return node_ == o.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;

  static Term make(TermKind kind, std::string name, Type type, std::uint32_t index, Term a,
                   Term b);

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind;
  std::string name;
  Type type;
  std::uint32_t index = 0;
  Term a;
  Term b;
  std::uint32_t loose = 0;
  bool has_free = false;
  std::size_t size = 1;
};

inline Term Term::make(TermKind kind, std::string name, Type type, std::uint32_t index,
                       Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->type = std::move(type);
  n->index = index;
  switch (kind) {
    case TermKind::Free:
      n->has_free = true;
      break;
    case TermKind::Const:
      break;
    case TermKind::Bound:
      n->loose = index + 1;
      break;
    case TermKind::Abs:
      assert(a.valid());
      n->loose = a.loose() > 0 ? a.loose() - 1 : 0;
      n->has_free = a.has_free();
      n->size = 1 + a.size();
      break;
    case TermKind::App:
      assert(a.valid() && b.valid());
      n->loose = std::max(a.loose(), b.loose());
      n->has_free = a.has_free() || b.has_free();
      n->size = a.size() + b.size();
      break;
  }
  n->a = std::move(a);
  n->b = std::move(b);
  Term t;
  t.node_ = std::move(n);
  return t;
}

inline TermKind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const Type& Term::type() const { return node_->type; }
inline std::uint32_t Term::index() const { return node_->index; }
inline const Term& Term::body() const { return node_->a; }
inline const Term& Term::arg() const { return node_->b; }
inline std::uint32_t Term::loose() const { return node_->loose; }
inline bool Term::has_free() const { return node_->has_free; }
inline std::size_t Term::size() const { return node_->size; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Free:
    case TermKind::Const:
      return a.name() == b.name() && a.type() == b.type();
    case TermKind::Bound:
      return a.index() == b.index() && a.type() == b.type();
    case TermKind::Abs:
      return a.type() == b.type() && a.body() == b.body();
    case TermKind::App:
      return a.size() == b.size() && a.fn() == b.fn() && a.arg() == b.arg();
  }
  return false;
}

/// Alpha-equivalence. Terms are compared up to bound-variable naming only;
/// callers normalize first when beta/eta-equivalence is wanted.
inline bool alpha_equal(const Term& t, const Term& s) { return t == s; }

/// Type of a well-typed term.
inline Type type_of(const Term& t) {
  switch (t.kind()) {
    case TermKind::Free:
    case TermKind::Const:
    case TermKind::Bound:
      return t.type();
    case TermKind::Abs:
      return Type::arrow(t.type(), type_of(t.body()));
    case TermKind::App:
      return type_of(t.fn()).result();
  }
  return {};
}

/// A binder in a context: name hint plus type. Contexts are stored
/// outermost first, so de Bruijn index i names `ctx[ctx.size() - 1 - i]`.
struct Binder {
  std::string name;
  Type type;
};

/// The canonical-form view `\x1..xn. h t1 .. tm`.
struct Spine {
  std::vector<Binder> binders;
  Term head;
  std::vector<Term> args;
};

/// Splits `h t1 .. tm` into head and arguments (no binders stripped).
inline std::pair<Term, std::vector<Term>> head_args(const Term& t) {
  std::vector<Term> args;
  Term h = t;
  while (h.is(TermKind::App)) {
    args.push_back(h.arg());
    h = h.fn();
  }
  std::reverse(args.begin(), args.end());
  return {h, std::move(args)};
}

inline Spine spine(const Term& t) {
  Spine s;
  Term body = t;
  while (body.is(TermKind::Abs)) {
    s.binders.push_back({body.name(), body.type()});
    body = body.body();
  }
  auto [h, args] = head_args(body);
  s.head = std::move(h);
  s.args = std::move(args);
  return s;
}

/// Wraps `body` in binders, outermost first.
inline Term abstract_over(std::span<const Binder> binders, Term body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    body = Term::abs(it->name, it->type, std::move(body));
  return body;
}

/// Adds `delta` to every loose index >= `cutoff`.
inline Term shift(const Term& t, std::int64_t delta, std::uint32_t cutoff = 0) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Bound: {
      std::int64_t k = static_cast<std::int64_t>(t.index()) + delta;
      assert(k >= 0);
      return Term::bound(static_cast<std::uint32_t>(k), t.type(), t.name());
    }
    case TermKind::Abs:
      return Term::abs(t.name(), t.type(), shift(t.body(), delta, cutoff + 1));
    case TermKind::App:
      return Term::app(shift(t.fn(), delta, cutoff), shift(t.arg(), delta, cutoff));
    default:
      return t;
  }
}

/// True iff de Bruijn index `k` occurs loose in `t`.
inline bool has_loose(const Term& t, std::uint32_t k) {
  if (t.loose() <= k) return false;
  switch (t.kind()) {
    case TermKind::Bound: return t.index() == k;
    case TermKind::Abs: return has_loose(t.body(), k + 1);
    case TermKind::App: return has_loose(t.fn(), k) || has_loose(t.arg(), k);
    default: return false;
  }
}

namespace detail {

inline Term instantiate_at(const Term& t, std::uint32_t depth, const Term& s) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      if (t.index() == depth) return shift(s, depth);
      return Term::bound(t.index() - 1, t.type(), t.name());
    case TermKind::Abs:
      return Term::abs(t.name(), t.type(), instantiate_at(t.body(), depth + 1, s));
    case TermKind::App:
      return Term::app(instantiate_at(t.fn(), depth, s),
                       instantiate_at(t.arg(), depth, s));
    default:
      return t;
  }
}

}  // namespace detail

/// Substitutes `s` for index 0 in the body of an abstraction (the beta step).
inline Term instantiate(const Term& body, const Term& s) {
  return detail::instantiate_at(body, 0, s);
}

/// Beta-normal form. Terminates on simply-typed input.
inline Term beta_normalize(const Term& t) {
  switch (t.kind()) {
    case TermKind::Abs: {
      Term b = beta_normalize(t.body());
      return b.same_node(t.body()) ? t : Term::abs(t.name(), t.type(), b);
    }
    case TermKind::App: {
      Term f = beta_normalize(t.fn());
      Term a = beta_normalize(t.arg());
      if (f.is(TermKind::Abs)) return beta_normalize(instantiate(f.body(), a));
      if (f.same_node(t.fn()) && a.same_node(t.arg())) return t;
      return Term::app(f, a);
    }
    default:
      return t;
  }
}

/// Full eta-reduction of a beta-normal term.
inline Term eta_reduce(const Term& t) {
  switch (t.kind()) {
    case TermKind::Abs: {
      Term b = eta_reduce(t.body());
      if (b.is(TermKind::App) && b.arg().is(TermKind::Bound) &&
          b.arg().index() == 0 && !has_loose(b.fn(), 0))
        return shift(b.fn(), -1);
      return b.same_node(t.body()) ? t : Term::abs(t.name(), t.type(), b);
    }
    case TermKind::App: {
      Term f = eta_reduce(t.fn());
      Term a = eta_reduce(t.arg());
      return f.same_node(t.fn()) && a.same_node(t.arg()) ? t : Term::app(f, a);
    }
    default:
      return t;
  }
}

/// Eta-long form of a beta-normal term under the mixed convention: every
/// position is eta-expanded except the arguments of free-variable heads,
/// which are eta-reduced to bare bound variables whenever possible.
/// Subterms already in that form are shared, not rebuilt.
inline Term eta_long(const Term& t) {
  if (t.is(TermKind::Abs)) {
    Term b = eta_long(t.body());
    return b.same_node(t.body()) ? t : Term::abs(t.name(), t.type(), b);
  }
  auto [head, args] = head_args(t);
  Type rest = head.type();
  for (std::size_t n = 0; n < args.size(); ++n) rest = rest.result();
  std::vector<Type> extra = rest.arguments();
  const auto k = static_cast<std::uint32_t>(extra.size());

  std::vector<Binder> binders;
  if (k > 0) {
    head = shift(head, k);
    for (Term& a : args) a = shift(a, k);
    for (std::uint32_t j = 0; j < k; ++j) {
      args.push_back(Term::bound(k - 1 - j, extra[j], "x"));
      binders.push_back({"x", extra[j]});
    }
  }

  const bool flex = head.is(TermKind::Free);
  bool changed = k > 0;
  for (Term& a : args) {
    Term r;
    if (flex) {
      r = eta_reduce(a);
      if (!r.is(TermKind::Bound)) r = eta_long(a);
    } else {
      r = eta_long(a);
    }
    changed = changed || !r.same_node(a);
    a = std::move(r);
  }
  if (!changed) return t;
  return abstract_over(binders, Term::apply(head, args));
}

/// Canonical form: beta-normal, eta-long under the mixed convention.
inline Term normalize(const Term& t) { return eta_long(beta_normalize(t)); }

}  // namespace hopsu
