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

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hopsu/error.hpp"
#include "hopsu/print.hpp"
#include "hopsu/term.hpp"
#include "hopsu/type.hpp"

namespace hopsu {

/// Declared basic types, constants, and free variables.
struct Signature {
  std::set<std::string> base_types;
  std::map<std::string, Type> constants;
  std::map<std::string, Type> variables;

  bool declares(const std::string& name) const {
    return constants.count(name) || variables.count(name);
  }
};

namespace detail {

inline Type check(const Term& t, const Signature& sig, std::vector<Type>& ctx) {
  switch (t.kind()) {
    case TermKind::Const: {
      auto it = sig.constants.find(t.name());
      if (it == sig.constants.end())
        throw InputError(ErrorKind::UndeclaredSymbol, "constant '" + t.name() + "'");
      if (!(it->second == t.type()))
        throw InputError(ErrorKind::TypeMismatch,
                         "at '" + t.name() + "': expected " + it->second.str() +
                             ", found " + t.type().str());
      return t.type();
    }
    case TermKind::Free: {
      auto it = sig.variables.find(t.name());
      if (it == sig.variables.end())
        throw InputError(ErrorKind::UndeclaredSymbol, "variable '" + t.name() + "'");
      if (!(it->second == t.type()))
        throw InputError(ErrorKind::TypeMismatch,
                         "at '" + t.name() + "': expected " + it->second.str() +
                             ", found " + t.type().str());
      return t.type();
    }
    case TermKind::Bound: {
      if (t.index() >= ctx.size())
        throw InputError(ErrorKind::UnboundIdentifier,
                         "bound variable '" + t.name() + "' out of scope");
      const Type& declared = ctx[ctx.size() - 1 - t.index()];
      if (!(declared == t.type()))
        throw InputError(ErrorKind::TypeMismatch,
                         "at '" + t.name() + "': expected " + declared.str() +
                             ", found " + t.type().str());
      return t.type();
    }
    case TermKind::Abs: {
      ctx.push_back(t.type());
      Type body = check(t.body(), sig, ctx);
      ctx.pop_back();
      return Type::arrow(t.type(), body);
    }
    case TermKind::App: {
      Type f = check(t.fn(), sig, ctx);
      Type a = check(t.arg(), sig, ctx);
      if (!f.is_arrow())
        throw InputError(ErrorKind::TypeMismatch,
                         "in '" + to_string(t) + "': applied term has base type " + f.str());
      if (!(f.arg() == a))
        throw InputError(ErrorKind::TypeMismatch,
                         "in '" + to_string(t) + "': expected argument of type " +
                             f.arg().str() + ", found " + a.str());
      return f.result();
    }
  }
  return {};
}

}  // namespace detail

/// Type of `t` under the declarations in `sig`. `context` types the loose
/// bound variables (outermost first). Throws InputError on ill-typed input.
inline Type typecheck(const Term& t, const Signature& sig,
                      std::span<const Type> context = {}) {
  std::vector<Type> ctx(context.begin(), context.end());
  return detail::check(t, sig, ctx);
}

/// Free variables with their types, in first-occurrence (left to right) order.
inline void free_vars_in_order(const Term& t, std::vector<Term>& out) {
  if (!t.has_free()) return;
  switch (t.kind()) {
    case TermKind::Free:
      for (const Term& v : out)
        if (v.name() == t.name()) return;
      out.push_back(t);
      break;
    case TermKind::Abs:
      free_vars_in_order(t.body(), out);
      break;
    case TermKind::App:
      free_vars_in_order(t.fn(), out);
      free_vars_in_order(t.arg(), out);
      break;
    default:
      break;
  }
}

inline std::set<std::string> free_vars(const Term& t) {
  std::vector<Term> vs;
  free_vars_in_order(t, vs);
  std::set<std::string> out;
  for (const Term& v : vs) out.insert(v.name());
  return out;
}

inline bool occurs_free(const std::string& name, const Term& t) {
  if (!t.has_free()) return false;
  switch (t.kind()) {
    case TermKind::Free: return t.name() == name;
    case TermKind::Abs: return occurs_free(name, t.body());
    case TermKind::App: return occurs_free(name, t.fn()) || occurs_free(name, t.arg());
    default: return false;
  }
}

/// Where a term stops being a higher-order pattern.
struct PatternViolation {
  std::string variable;        // offending free variable
  std::size_t argument = 0;    // 1-based argument position
  std::vector<std::size_t> position;  // path of argument indices from the root
  std::string reason;
};

namespace detail {

inline std::optional<PatternViolation> find_violation(const Term& t,
                                                      std::vector<std::size_t>& path) {
  Spine sp = spine(t);
  if (sp.head.is(TermKind::Free)) {
    std::vector<std::uint32_t> seen;
    for (std::size_t i = 0; i < sp.args.size(); ++i) {
      const Term& a = sp.args[i];
      if (!a.is(TermKind::Bound)) {
        path.push_back(i + 1);
        PatternViolation v{sp.head.name(), i + 1, path,
                           "argument is not a bound variable"};
        path.pop_back();
        return v;
      }
      for (auto k : seen)
        if (k == a.index()) {
          path.push_back(i + 1);
          PatternViolation v{sp.head.name(), i + 1, path, "repeated bound variable"};
          path.pop_back();
          return v;
        }
      seen.push_back(a.index());
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < sp.args.size(); ++i) {
    path.push_back(i + 1);
    auto v = find_violation(sp.args[i], path);
    path.pop_back();
    if (v) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks a canonical term: every free-variable occurrence must be applied
/// to pairwise distinct bound variables. Returns the first violation.
inline std::optional<PatternViolation> pattern_violation(const Term& t) {
  std::vector<std::size_t> path;
  return detail::find_violation(t, path);
}

inline bool is_pattern(const Term& t) { return !pattern_violation(t).has_value(); }

/// Rigid: head is a constant or bound variable. Flexible: head is a free variable.
inline bool is_flexible(const Term& t) { return spine(t).head.is(TermKind::Free); }
inline bool is_rigid(const Term& t) { return !is_flexible(t); }

struct TermStats {
  std::size_t size = 0;
  std::set<std::string> free_vars;
  Term head;
};

inline TermStats term_stats(const Term& t) {
  return {t.size(), free_vars(t), spine(t).head};
}

/// Nesting depth of heads: depth(\x. h) = 1, depth(h t1..tm) = 1 + max depth(ti).
inline std::size_t head_depth(const Term& t) {
  Spine sp = spine(t);
  std::size_t d = 0;
  for (const Term& a : sp.args) d = std::max(d, head_depth(a));
  return d + 1;
}

}  // namespace hopsu
