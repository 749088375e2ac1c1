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
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopsu/kernel.hpp"
#include "hopsu/print.hpp"
#include "hopsu/term.hpp"

namespace hopsu {

/// Finite map from free-variable names to closed canonical terms of the
/// variable's type. Identity bindings are never stored.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;

  /// Adds `name |-> value`. `value` must be locally closed and canonical.
  void bind(const std::string& name, const Term& value) {
    assert(value.loose() == 0);
    if (is_identity_binding(name, value)) {
      bindings_.erase(name);
      return;
    }
    bindings_.insert_or_assign(name, value);
  }

  const Term* find(const std::string& name) const {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
  }
  bool contains(const std::string& name) const { return bindings_.count(name) > 0; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Map& bindings() const { return bindings_; }

  std::set<std::string> domain() const {
    std::set<std::string> d;
    for (const auto& [k, v] : bindings_) d.insert(k);
    return d;
  }

  /// fv(Ran(sigma)).
  std::set<std::string> range_vars() const {
    std::set<std::string> out;
    for (const auto& [k, v] : bindings_) {
      auto fv = free_vars(v);
      out.insert(fv.begin(), fv.end());
    }
    return out;
  }

  /// No domain variable occurs in a range term.
  bool idempotent() const {
    for (const auto& name : range_vars())
      if (contains(name)) return false;
    return true;
  }

  /// sigma|V.
  Substitution restrict(const std::set<std::string>& vars) const {
    Substitution out;
    for (const auto& [k, v] : bindings_)
      if (vars.count(k)) out.bindings_.emplace(k, v);
    return out;
  }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  static bool is_identity_binding(const std::string& name, const Term& value) {
    Spine sp = spine(value);
    if (!sp.head.is(TermKind::Free) || sp.head.name() != name) return false;
    if (sp.args.size() != sp.binders.size()) return false;
    const auto n = static_cast<std::uint32_t>(sp.args.size());
    for (std::uint32_t i = 0; i < n; ++i)
      if (!sp.args[i].is(TermKind::Bound) || sp.args[i].index() != n - 1 - i) return false;
    return true;
  }

  Map bindings_;
};

namespace detail {

inline Term replace_free(const Term& t, const Substitution& sigma, bool& changed) {
  if (!t.has_free()) return t;
  switch (t.kind()) {
    case TermKind::Free: {
      if (const Term* v = sigma.find(t.name())) {
        changed = true;
        return *v;
      }
      return t;
    }
    case TermKind::Abs: {
      Term b = replace_free(t.body(), sigma, changed);
      return b.same_node(t.body()) ? t : Term::abs(t.name(), t.type(), b);
    }
    case TermKind::App: {
      Term f = replace_free(t.fn(), sigma, changed);
      Term a = replace_free(t.arg(), sigma, changed);
      if (f.same_node(t.fn()) && a.same_node(t.arg())) return t;
      return Term::app(f, a);
    }
    default:
      return t;
  }
}

}  // namespace detail

/// t sigma: replaces free occurrences, then renormalizes. Range terms are
/// closed, so de Bruijn indexing makes the replacement capture-free.
inline Term apply_subst(const Term& t, const Substitution& sigma) {
  if (sigma.empty()) return t;
  bool changed = false;
  Term r = detail::replace_free(t, sigma, changed);
  return changed ? normalize(r) : t;
}

/// sigma theta, i.e. x (sigma theta) = (x sigma) theta for every x.
inline Substitution compose(const Substitution& sigma, const Substitution& theta) {
  Substitution out;
  for (const auto& [name, value] : sigma.bindings())
    out.bind(name, apply_subst(value, theta));
  for (const auto& [name, value] : theta.bindings())
    if (!sigma.contains(name)) out.bind(name, value);
  return out;
}

/// Renames free variables according to `renaming` (old -> new name).
inline Term rename_free(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (!t.has_free()) return t;
  switch (t.kind()) {
    case TermKind::Free: {
      auto it = renaming.find(t.name());
      return it == renaming.end() ? t : Term::free(it->second, t.type());
    }
    case TermKind::Abs:
      return Term::abs(t.name(), t.type(), rename_free(t.body(), renaming));
    case TermKind::App:
      return Term::app(rename_free(t.fn(), renaming), rename_free(t.arg(), renaming));
    default:
      return t;
  }
}

/// Per-run generator of fresh free variables H1, H2, ... that skips every
/// reserved (user-declared) name.
class FreshSupply {
 public:
  explicit FreshSupply(std::set<std::string> reserved = {}, std::string prefix = "H")
      : reserved_(std::move(reserved)), prefix_(std::move(prefix)) {}

  Term next(const Type& type) {
    std::string name;
    do {
      name = prefix_ + std::to_string(++counter_);
    } while (reserved_.count(name));
    generated_.insert(name);
    return Term::free(name, type);
  }

  bool generated(const std::string& name) const { return generated_.count(name) > 0; }
  const std::set<std::string>& reserved() const { return reserved_; }
  std::size_t count() const { return counter_; }

 private:
  std::set<std::string> reserved_;
  std::string prefix_;
  std::size_t counter_ = 0;
  std::set<std::string> generated_;
};

/// Renames supply-generated variables occurring in `sigma` to H, H', H'', ...
/// in first-occurrence order, visiting bindings in `order` (then any remaining
/// domain variables alphabetically). Names in `reserved` are skipped.
/// Returns the renamed substitution; `renaming` receives the mapping used.
inline Substitution canonicalize_fresh(const Substitution& sigma,
                                       std::span<const std::string> order,
                                       const FreshSupply& supply,
                                       std::map<std::string, std::string>* renaming = nullptr) {
  std::vector<std::string> visit(order.begin(), order.end());
  for (const auto& [name, value] : sigma.bindings())
    if (std::find(visit.begin(), visit.end(), name) == visit.end()) visit.push_back(name);

  std::map<std::string, std::string> ren;
  std::set<std::string> used = supply.reserved();
  for (const auto& [name, value] : sigma.bindings())
    if (!supply.generated(name)) used.insert(name);
  std::string candidate = "H";
  auto assign = [&](const std::string& fresh) {
    if (!supply.generated(fresh) || ren.count(fresh)) return;
    while (used.count(candidate)) candidate += '\'';
    ren.emplace(fresh, candidate);
    used.insert(candidate);
  };
  for (const auto& name : visit) {
    const Term* v = sigma.find(name);
    if (!v) continue;
    assign(name);
    std::vector<Term> fvs;
    free_vars_in_order(*v, fvs);
    for (const Term& fv : fvs) assign(fv.name());
  }

  Substitution out;
  for (const auto& [name, value] : sigma.bindings()) {
    auto it = ren.find(name);
    out.bind(it == ren.end() ? name : it->second, rename_free(value, ren));
  }
  if (renaming) *renaming = std::move(ren);
  return out;
}

/// `{F := \x:i. a (H x), ...}` with bindings listed in `order` first.
inline std::string to_string(const Substitution& sigma, std::span<const std::string> order = {}) {
  std::vector<std::string> visit(order.begin(), order.end());
  for (const auto& [name, value] : sigma.bindings())
    if (std::find(visit.begin(), visit.end(), name) == visit.end()) visit.push_back(name);
  std::string out = "{";
  bool first = true;
  for (const auto& name : visit) {
    const Term* v = sigma.find(name);
    if (!v) continue;
    if (!first) out += ", ";
    first = false;
    out += name + " := " + to_string(*v);
  }
  return out + "}";
}

}  // namespace hopsu
