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

// Brute-force reference machinery. Nothing here calls into the rule-based
// unifier except crisp_unify; unifiers are found by enumerating canonical
// terms and evaluating the unification degree directly.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopsu/error.hpp"
#include "hopsu/kernel.hpp"
#include "hopsu/similarity.hpp"
#include "hopsu/substitution.hpp"
#include "hopsu/term.hpp"
#include "hopsu/unifier.hpp"

namespace hopsu {

struct EnumerationBudget {
  /// Candidate terms have head_depth at most this (>= 1).
  std::size_t max_term_depth = 2;
  /// Cap on the number of candidate substitutions examined.
  std::size_t max_subst_candidates = 1'000'000;
  /// Constants to build candidates from; all constants of the relation
  /// when unset.
  std::optional<std::map<std::string, Type>> constants;
};

namespace detail {

/// Memoized generator of canonical terms over a fixed set of head symbols.
class TermEnumerator {
 public:
  explicit TermEnumerator(std::vector<Term> heads) : heads_(std::move(heads)) {}

  /// All canonical terms of `type` with head_depth <= depth whose loose bound
  /// variables are typed by `ctx` (outermost first).
  const std::vector<Term>& terms(const Type& type, std::size_t depth,
                                 const std::vector<Type>& ctx) {
    std::string key = std::to_string(depth) + "|" + type.str();
    for (const Type& c : ctx) key += "|" + c.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Type> inner = ctx;
    std::vector<Binder> binders;
    for (const Type& a : type.arguments()) {
      inner.push_back(a);
      binders.push_back({binders.size() < 3 ? std::string(1, "xyz"[binders.size()]) : "x", a});
    }
    std::vector<Term> out;
    for (const Term& body : base_terms(type.target(), depth, inner))
      out.push_back(abstract_over(binders, body));
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::vector<Term> base_terms(const Type& target, std::size_t depth,
                               const std::vector<Type>& ctx) {
    std::vector<Term> out;
    if (depth == 0) return out;
    std::vector<Term> heads = heads_;
    for (std::size_t p = 0; p < ctx.size(); ++p)
      heads.push_back(Term::bound(static_cast<std::uint32_t>(ctx.size() - 1 - p), ctx[p]));
    for (const Term& h : heads) {
      if (!(h.type().target() == target)) continue;
      auto arg_types = h.type().arguments();
      if (arg_types.empty()) {
        out.push_back(h);
        continue;
      }
      if (depth < 2) continue;
      std::vector<const std::vector<Term>*> pools;
      bool empty = false;
      for (const Type& a : arg_types) {
        pools.push_back(&terms(a, depth - 1, ctx));
        empty = empty || pools.back()->empty();
      }
      if (empty) continue;
      std::vector<std::size_t> pick(pools.size(), 0);
      for (;;) {
        std::vector<Term> args;
        for (std::size_t k = 0; k < pools.size(); ++k) args.push_back((*pools[k])[pick[k]]);
        Term t = Term::apply(h, args);
        out.push_back(h.is(TermKind::Free) ? normalize(t) : t);
        std::size_t k = pools.size();
        while (k > 0 && ++pick[k - 1] == pools[k - 1]->size()) pick[--k] = 0;
        if (k == 0) break;
      }
    }
    return out;
  }

  std::vector<Term> heads_;
  std::map<std::string, std::vector<Term>> memo_;
};

/// The enumerator for `heads`, kept between calls with the same heads so
/// that repeated oracle queries on one problem share the generated terms.
inline TermEnumerator& shared_enumerator(const std::vector<Term>& heads) {
  thread_local std::vector<Term> key;
  thread_local std::optional<TermEnumerator> cached;
  if (!cached || key != heads) {
    key = heads;
    cached.emplace(heads);
  }
  return *cached;
}

inline void collect_constants(const Term& t, std::map<std::string, Type>& out) {
  switch (t.kind()) {
    case TermKind::Const: out.emplace(t.name(), t.type()); break;
    case TermKind::Abs: collect_constants(t.body(), out); break;
    case TermKind::App:
      collect_constants(t.fn(), out);
      collect_constants(t.arg(), out);
      break;
    default: break;
  }
}

inline std::vector<Term> constant_heads(const SimilarityRelation& rel,
                                        const EnumerationBudget& budget,
                                        std::span<const Term> extra) {
  std::map<std::string, Type> cs = budget.constants ? *budget.constants : rel.constants();
  for (const Term& t : extra) collect_constants(t, cs);
  std::vector<Term> out;
  for (const auto& [name, type] : cs) out.push_back(Term::constant(name, type));
  return out;
}

}  // namespace detail

/// Canonical closed terms of `type` over `heads` (constants or free
/// variables) with head_depth <= depth, in a fixed deterministic order.
inline std::vector<Term> enumerate_terms(const Type& type, std::size_t depth,
                                         std::span<const Term> heads) {
  detail::TermEnumerator e(std::vector<Term>(heads.begin(), heads.end()));
  return e.terms(type, depth, {});
}

struct EnumeratedUnifier {
  Substitution substitution;
  Degree degree;
};

struct EnumerationResult {
  std::vector<EnumeratedUnifier> unifiers;  // degree descending
  std::size_t examined = 0;
  bool exhaustive = true;  // false if max_subst_candidates cut the search short
};

/// Every ground substitution for the free variables of the equations whose
/// candidate terms fit the budget and whose degree reaches mu.
/// Throws InputError(BudgetTooSmall) if some variable has no candidate.
inline EnumerationResult enumerate_unifiers(std::span<const std::pair<Term, Term>> equations,
                                            const SimilarityRelation& rel, CutValue mu,
                                            const EnumerationBudget& budget) {
  if (budget.max_term_depth == 0)
    throw InputError(ErrorKind::BudgetTooSmall, "term depth must be at least 1");
  std::vector<std::pair<Term, Term>> eqs;
  std::vector<Term> sides, vars;
  for (const auto& [t, s] : equations) {
    eqs.emplace_back(normalize(t), normalize(s));
    sides.push_back(eqs.back().first);
    sides.push_back(eqs.back().second);
    free_vars_in_order(eqs.back().first, vars);
    free_vars_in_order(eqs.back().second, vars);
  }

  detail::TermEnumerator gen(detail::constant_heads(rel, budget, sides));
  std::vector<const std::vector<Term>*> pools;
  for (const Term& v : vars) {
    pools.push_back(&gen.terms(v.type(), budget.max_term_depth, {}));
    if (pools.back()->empty())
      throw InputError(ErrorKind::BudgetTooSmall,
                       "no candidate term of type " + v.type().str() + " for " + v.name() +
                           " at depth " + std::to_string(budget.max_term_depth));
  }

  EnumerationResult res;
  std::vector<std::size_t> pick(vars.size(), 0);
  for (;;) {
    if (res.examined == budget.max_subst_candidates) {
      res.exhaustive = false;
      break;
    }
    ++res.examined;
    Substitution theta;
    for (std::size_t k = 0; k < vars.size(); ++k) theta.bind(vars[k].name(), (*pools[k])[pick[k]]);
    Degree d = 1.0;
    for (const auto& [t, s] : eqs) {
      d = tnorm(d, canonical_degree(rel, apply_subst(t, theta), apply_subst(s, theta)));
      if (d < mu.value()) break;
    }
    if (d >= mu.value()) res.unifiers.push_back({std::move(theta), d});

    std::size_t k = vars.size();
    while (k > 0 && ++pick[k - 1] == pools[k - 1]->size()) pick[--k] = 0;
    if (k == 0) break;
  }
  std::stable_sort(res.unifiers.begin(), res.unifiers.end(),
                   [](const auto& a, const auto& b) { return a.degree > b.degree; });
  return res;
}

inline EnumerationResult enumerate_unifiers(const Term& t, const Term& s,
                                            const SimilarityRelation& rel, CutValue mu,
                                            const EnumerationBudget& budget) {
  std::pair<Term, Term> eq{t, s};
  return enumerate_unifiers(std::span<const std::pair<Term, Term>>(&eq, 1), rel, mu, budget);
}

enum class Verdict { Yes, No, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct SubsumptionResult {
  Verdict verdict = Verdict::Inconclusive;
  Substitution witness;  // psi, when verdict is Yes
  std::size_t examined = 0;
};

namespace detail {

struct WitnessSearch {
  const SimilarityRelation& rel;
  Degree mu;
  std::size_t limit;
  std::vector<Term> fresh;                 // variables psi must instantiate
  std::vector<const std::vector<Term>*> pools;  // candidates per fresh variable
  std::vector<std::vector<std::size_t>> checks_at;  // V-indices checkable at each level
  std::vector<Term> lhs, rhs;              // x sigma, x tau
  std::size_t examined = 0;
  bool out_of_budget = false;

  bool check(std::size_t level, const Substitution& psi) {
    for (std::size_t i : checks_at[level])
      if (canonical_degree(rel, apply_subst(lhs[i], psi), rhs[i]) < mu) return false;
    return true;
  }

  bool search(std::size_t level, Substitution& psi) {
    if (!check(level, psi)) return false;
    if (level == fresh.size()) return true;
    for (const Term& cand : *pools[level]) {
      if (examined == limit) {
        out_of_budget = true;
        return false;
      }
      ++examined;
      Substitution next = psi;
      next.bind(fresh[level].name(), cand);
      if (search(level + 1, next)) {
        psi = std::move(next);
        return true;
      }
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace detail

/// Is `sigma` at least as general as `tau` on `vars` modulo (rel, mu)?
/// Looks for psi with R(x sigma psi, x tau) >= mu for every x in vars by
/// enumerating psi over fv(x sigma), deepening up to the depth of the tau
/// terms. A psi that would need deeper terms than x tau cannot match it, so
/// an exhausted search at that depth is a definite No; running out of
/// budget first is Inconclusive.
inline SubsumptionResult subsumes(const Substitution& sigma, const Substitution& tau,
                                  const SimilarityRelation& rel, CutValue mu,
                                  std::span<const Term> vars, const EnumerationBudget& budget) {
  detail::WitnessSearch ws{rel, mu.value(), budget.max_subst_candidates, {}, {}, {}, {}, {}};
  std::vector<Term> range_terms;
  std::vector<Term> tau_vars;
  for (const Term& x : vars) {
    const Term* s = sigma.find(x.name());
    const Term* t = tau.find(x.name());
    ws.lhs.push_back(s ? *s : normalize(x));
    ws.rhs.push_back(t ? *t : normalize(x));
    range_terms.push_back(ws.lhs.back());
    range_terms.push_back(ws.rhs.back());
    free_vars_in_order(ws.rhs.back(), tau_vars);
  }

  // Check bindings with fewer unknowns first so that the search prunes early.
  std::vector<std::size_t> order(vars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return free_vars(ws.lhs[a]).size() < free_vars(ws.lhs[b]).size();
  });
  for (std::size_t i : order) free_vars_in_order(ws.lhs[i], ws.fresh);
  ws.checks_at.assign(ws.fresh.size() + 1, {});
  for (std::size_t i = 0; i < ws.lhs.size(); ++i) {
    std::size_t level = 0;
    for (const auto& name : free_vars(ws.lhs[i]))
      for (std::size_t k = 0; k < ws.fresh.size(); ++k)
        if (ws.fresh[k].name() == name) level = std::max(level, k + 1);
    ws.checks_at[level].push_back(i);
  }

  std::size_t needed = 1;
  for (const Term& r : ws.rhs) needed = std::max(needed, head_depth(r));
  const std::size_t reach = std::min(needed, budget.max_term_depth);

  std::vector<Term> heads = detail::constant_heads(rel, budget, range_terms);
  heads.insert(heads.end(), tau_vars.begin(), tau_vars.end());
  detail::TermEnumerator& gen = detail::shared_enumerator(heads);

  SubsumptionResult res;
  for (std::size_t depth = 1; depth <= reach; ++depth) {
    ws.pools.clear();
    for (const Term& h : ws.fresh) ws.pools.push_back(&gen.terms(h.type(), depth, {}));
    Substitution psi;
    bool found = ws.search(0, psi);
    res.examined = ws.examined;
    if (found) {
      res.verdict = Verdict::Yes;
      res.witness = std::move(psi);
      return res;
    }
    if (ws.out_of_budget) {
      res.verdict = Verdict::Inconclusive;
      return res;
    }
    if (ws.fresh.empty()) break;
  }
  res.verdict = ws.fresh.empty() || reach == needed ? Verdict::No : Verdict::Inconclusive;
  return res;
}

/// Crisp reference mode: identity relation, cut value 1.
inline Answer crisp_unify(const Term& t, const Term& s, const UnifyOptions& options = {}) {
  return unify(t, s, SimilarityRelation{}, CutValue(1.0), options);
}

inline Answer crisp_unify(std::span<const std::pair<Term, Term>> equations,
                          const UnifyOptions& options = {}) {
  return unify(equations, SimilarityRelation{}, CutValue(1.0), options);
}

/// A ground unifier obtained from `sigma` on `vars`: every free variable
/// left in x sigma (x in vars) is replaced by the first closed term of its
/// type over `heads`, searching up to `max_depth`. Returns nullopt if some
/// type has no closed inhabitant within that depth.
inline std::optional<Substitution> ground_instance(const Substitution& sigma,
                                                   std::span<const Term> vars,
                                                   std::span<const Term> heads,
                                                   std::size_t max_depth = 3) {
  std::vector<Term> images, rvars;
  for (const Term& x : vars) {
    const Term* v = sigma.find(x.name());
    images.push_back(v ? *v : normalize(x));
    free_vars_in_order(images.back(), rvars);
  }
  detail::TermEnumerator gen(std::vector<Term>(heads.begin(), heads.end()));
  Substitution psi;
  for (const Term& v : rvars) {
    std::optional<Term> pick;
    for (std::size_t d = 1; d <= max_depth && !pick; ++d) {
      const auto& pool = gen.terms(v.type(), d, {});
      if (!pool.empty()) pick = pool.front();
    }
    if (!pick) return std::nullopt;
    psi.bind(v.name(), *pick);
  }
  Substitution out;
  for (std::size_t k = 0; k < vars.size(); ++k)
    out.bind(vars[k].name(), apply_subst(images[k], psi));
  return out;
}

}  // namespace hopsu
