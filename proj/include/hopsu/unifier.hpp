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

// Unification of higher-order patterns modulo a similarity relation.
//
// A configuration (P; sigma; d) is rewritten by the rules Abs, Dec, SV,
// Ori, LF and Fail until P is empty or the run fails. LF delegates to the
// crisp variable-elimination procedure (rules VE1 and VE2). The strategy
// always rewrites the first equation of P; equations produced by Dec are
// appended to the back.
//
// Equations are open terms: the bound variables introduced by Abs stay as
// loose de Bruijn indices, and each equation carries the binders (names and
// types) that close it.

#pragma once

#include <algorithm>
#include <cassert>
#include <deque>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hopsu/error.hpp"
#include "hopsu/kernel.hpp"
#include "hopsu/print.hpp"
#include "hopsu/similarity.hpp"
#include "hopsu/substitution.hpp"
#include "hopsu/term.hpp"

namespace hopsu {

enum class Rule { Abs, Dec, SV, Ori, LF, Fail, VE1, VE2 };

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Abs: return "Abs";
    case Rule::Dec: return "Dec";
    case Rule::SV: return "SV";
    case Rule::Ori: return "Ori";
    case Rule::LF: return "LF";
    case Rule::Fail: return "Fail";
    case Rule::VE1: return "VE1";
    case Rule::VE2: return "VE2";
  }
  return "?";
}

/// `left =?= right` under the bound variables of `context`.
struct Equation {
  Term left;
  Term right;
  std::vector<Binder> context;
};

inline std::string to_string(const Equation& e) {
  auto names = context_names(e.context);
  return to_string(e.left, names) + " =?= " + to_string(e.right, names);
}

struct Configuration {
  std::vector<Equation> problem;
  Substitution sigma;
  Degree degree = 1.0;
};

enum class FailureKind { TypeClash, DegreeBelowCut, OccursCheck, BoundVarEscape, NoRule };

inline std::string_view to_string(FailureKind k) {
  switch (k) {
    case FailureKind::TypeClash: return "TypeClash";
    case FailureKind::DegreeBelowCut: return "DegreeBelowCut";
    case FailureKind::OccursCheck: return "OccursCheck";
    case FailureKind::BoundVarEscape: return "BoundVarEscape";
    case FailureKind::NoRule: return "NoRule";
  }
  return "?";
}

struct FailureReason {
  FailureKind kind = FailureKind::NoRule;
  std::string left;    // DegreeBelowCut: heads; others: the sides
  std::string right;
  Degree required = 0.0;  // DegreeBelowCut: the cut value
  std::string variable;   // OccursCheck: the variable; BoundVarEscape: the bound variable

  std::string describe() const {
    std::string k(to_string(kind));
    switch (kind) {
      case FailureKind::DegreeBelowCut:
        return k + "(" + left + ", " + right + ", " + format_degree(required) + ")";
      case FailureKind::OccursCheck:
        return k + "(" + variable + ")";
      case FailureKind::BoundVarEscape:
        return k + "(" + variable + ")";
      default:
        return k + "(" + left + ", " + right + ")";
    }
  }
};

/// Termination measure <N1, N2, N3>: distinct free variables of P, the
/// multiset of equation sizes (kept sorted in decreasing order), and the
/// number of rigid-flex equations. The failed configuration has <0, {}, 0>.
struct Measure {
  std::size_t free_vars = 0;
  std::vector<std::size_t> sizes;
  std::size_t rigid_flex = 0;

  friend bool operator==(const Measure&, const Measure&) = default;
};

/// Multiset extension of < on naturals. With both multisets sorted in
/// decreasing order it coincides with lexicographic comparison in which a
/// proper prefix is smaller.
inline bool multiset_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool operator<(const Measure& a, const Measure& b) {
  if (a.free_vars != b.free_vars) return a.free_vars < b.free_vars;
  if (a.sizes != b.sizes) return multiset_less(a.sizes, b.sizes);
  return a.rigid_flex < b.rigid_flex;
}

inline std::string to_string(const Measure& m) {
  std::string s = "<" + std::to_string(m.free_vars) + ", {";
  for (std::size_t i = 0; i < m.sizes.size(); ++i)
    s += (i ? "," : "") + std::to_string(m.sizes[i]);
  return s + "}, " + std::to_string(m.rigid_flex) + ">";
}

inline Measure measure(std::span<const Equation> problem) {
  Measure m;
  std::set<std::string> vars;
  for (const auto& e : problem) {
    auto l = free_vars(e.left);
    auto r = free_vars(e.right);
    vars.insert(l.begin(), l.end());
    vars.insert(r.begin(), r.end());
    m.sizes.push_back(e.left.size() + e.right.size());
    if (is_rigid(e.left) && is_flexible(e.right)) ++m.rigid_flex;
  }
  m.free_vars = vars.size();
  std::sort(m.sizes.rbegin(), m.sizes.rend());
  return m;
}

inline Measure measure(const Configuration& c) { return measure(c.problem); }

/// One line of a derivation. VE1/VE2 steps are the inner steps of the
/// preceding LF step.
struct TraceStep {
  Rule rule;
  Equation selected;
  std::optional<Substitution> binding;
  Degree degree_after;
  std::optional<FailureReason> failure;

  bool nested() const { return rule == Rule::VE1 || rule == Rule::VE2; }
};

/// `<rule> | <selected equation> | d=<degree>` plus the binding when present.
inline std::string to_string(const TraceStep& s) {
  std::string line = std::string(to_string(s.rule)) + " | " + to_string(s.selected) +
                     " | d=" + format_degree(s.degree_after);
  if (s.binding) line += " | " + to_string(*s.binding);
  if (s.failure) line += " | " + s.failure->describe();
  return line;
}

/// VarElim got stuck on `H(xs) =?= y(...)` with bound `y` outside `xs`.
struct BoundVarEscape {
  std::string variable;
  Equation equation;
};

namespace detail {

inline std::string head_name(const Term& head, std::span<const Binder> ctx) {
  if (head.is(TermKind::Bound)) {
    auto names = context_names(ctx);
    if (head.index() < names.size()) return names[names.size() - 1 - head.index()];
    return head.name();
  }
  return head.name();
}

/// Position of bound index `k` among pattern arguments, if present.
inline std::optional<std::size_t> position_of(std::span<const Term> args, std::uint32_t k) {
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i].is(TermKind::Bound) && args[i].index() == k) return i;
  return std::nullopt;
}

/// Binders `\y1..yn` for the pattern arguments `args` (names and types of
/// the bound variables they denote).
inline std::vector<Binder> binders_for(std::span<const Term> args) {
  std::vector<Binder> out;
  for (const Term& a : args) out.push_back({a.name(), a.type()});
  return out;
}

/// `\y1..yn. H(y_{p1}, .., y_{pk})` where `positions` select arguments.
inline Term projection_binding(std::span<const Term> args, const Term& fresh,
                               std::span<const std::size_t> positions) {
  const auto n = static_cast<std::uint32_t>(args.size());
  std::vector<Term> hargs;
  for (std::size_t p : positions)
    hargs.push_back(Term::bound(n - 1 - static_cast<std::uint32_t>(p), args[p].type(),
                                args[p].name()));
  auto bs = binders_for(args);
  return abstract_over(bs, Term::apply(fresh, hargs));
}

inline Equation apply_to(const Equation& e, const Substitution& s) {
  return {apply_subst(e.left, s), apply_subst(e.right, s), e.context};
}

}  // namespace detail

/// Crisp variable elimination for `flex =?= rhs` where flex = F(xs), F does
/// not occur in rhs, and both are base-typed patterns under `ctx`. Applies
/// VE1/VE2 as long as possible and returns the accumulated substitution
/// (including bindings of intermediate fresh variables).
inline std::variant<Substitution, BoundVarEscape> var_elim(const Term& flex, const Term& rhs,
                                                           std::span<const Binder> ctx,
                                                           FreshSupply& supply,
                                                           std::vector<TraceStep>* trace = nullptr,
                                                           Degree degree = 1.0) {
  std::deque<Equation> problem;
  problem.push_back({flex, rhs, std::vector<Binder>(ctx.begin(), ctx.end())});
  Substitution phi;

  while (!problem.empty()) {
    Equation eq = std::move(problem.front());
    problem.pop_front();

    auto [fhead, xs] = head_args(eq.left);
    auto [rhead, rargs] = head_args(eq.right);
    assert(fhead.is(TermKind::Free));
    const auto n = static_cast<std::uint32_t>(xs.size());

    if (rhead.is(TermKind::Const) ||
        (rhead.is(TermKind::Bound) && detail::position_of(xs, rhead.index()))) {
      // VE1: F |-> \ys. a(H1(ys), .., Hm(ys)); Hi(xs) =?= si.
      Term new_head = rhead;
      if (rhead.is(TermKind::Bound)) {
        auto p = *detail::position_of(xs, rhead.index());
        new_head = Term::bound(n - 1 - static_cast<std::uint32_t>(p), rhead.type(), xs[p].name());
      }
      std::vector<Term> binding_args;
      std::vector<Equation> emitted;
      for (const Term& s : rargs) {
        Spine ss = spine(s);
        const auto k = static_cast<std::uint32_t>(ss.binders.size());
        std::vector<Type> htypes;
        for (const Term& x : xs) htypes.push_back(x.type());
        for (const Binder& b : ss.binders) htypes.push_back(b.type);
        Term h = supply.next(arrows(htypes, type_of(Term::apply(ss.head, ss.args))));

        // Inside the binding: ys are indices n-1..0 shifted under k binders.
        std::vector<Term> in_binding;
        for (std::uint32_t j = 0; j < n; ++j)
          in_binding.push_back(Term::bound(n - 1 - j + k, xs[j].type(), xs[j].name()));
        for (std::uint32_t l = 0; l < k; ++l)
          in_binding.push_back(Term::bound(k - 1 - l, ss.binders[l].type, ss.binders[l].name));
        binding_args.push_back(abstract_over(ss.binders, Term::apply(h, in_binding)));

        // In the new equation: xs shifted under the k binders of si.
        std::vector<Term> in_eq;
        for (const Term& x : xs) in_eq.push_back(shift(x, k));
        for (std::uint32_t l = 0; l < k; ++l)
          in_eq.push_back(Term::bound(k - 1 - l, ss.binders[l].type, ss.binders[l].name));
        std::vector<Binder> ctx2 = eq.context;
        ctx2.insert(ctx2.end(), ss.binders.begin(), ss.binders.end());
        emitted.push_back({Term::apply(h, in_eq), Term::apply(ss.head, ss.args), std::move(ctx2)});
      }
      auto ys = detail::binders_for(xs);
      Substitution theta;
      theta.bind(fhead.name(), abstract_over(ys, Term::apply(new_head, binding_args)));
      if (trace) trace->push_back({Rule::VE1, eq, theta, degree, std::nullopt});
      phi = compose(phi, theta);
      for (auto& e : emitted) problem.push_back(std::move(e));
      continue;
    }

    if (rhead.is(TermKind::Free) && rhead.name() != fhead.name()) {
      // VE2: F |-> \xs. H(zs), G |-> \ys. H(zs), zs = xs /\ ys.
      std::vector<std::size_t> fpos, gpos;
      std::vector<Type> htypes;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (auto j = detail::position_of(rargs, xs[i].index())) {
          fpos.push_back(i);
          gpos.push_back(*j);
          htypes.push_back(xs[i].type());
        }
      Term h = supply.next(arrows(htypes, type_of(eq.left)));
      Substitution theta;
      theta.bind(fhead.name(), detail::projection_binding(xs, h, fpos));
      theta.bind(rhead.name(), detail::projection_binding(rargs, h, gpos));
      if (trace) trace->push_back({Rule::VE2, eq, theta, degree, std::nullopt});
      for (auto& e : problem) e = detail::apply_to(e, theta);
      phi = compose(phi, theta);
      continue;
    }

    // Bound head outside the flexible side's arguments.
    std::string y = detail::head_name(rhead, eq.context);
    if (trace) {
      FailureReason why{FailureKind::BoundVarEscape, {}, {}, 0.0, y};
      trace->push_back({Rule::Fail, eq, std::nullopt, degree, why});
    }
    return BoundVarEscape{y, eq};
  }
  return phi;
}

/// Result of one rewriting step: the next configuration or failure, plus
/// the trace lines it produced (LF contributes its VE1/VE2 steps).
struct StepOutcome {
  std::variant<Configuration, FailureReason> next;
  std::vector<TraceStep> steps;

  bool failed() const { return std::holds_alternative<FailureReason>(next); }
};

namespace detail {

struct Guards {
  bool abs = false, dec = false, sv = false, ori = false, lf = false;
  int count() const { return abs + dec + sv + ori + lf; }
};

inline Degree head_similarity(const SimilarityRelation& rel, const Term& a, const Term& b) {
  return sym_degree(rel, a, b);
}

}  // namespace detail

/// Rewrites the first equation of a non-empty configuration.
inline StepOutcome step(const Configuration& config, const SimilarityRelation& rel,
                        CutValue mu, FreshSupply& supply) {
  assert(!config.problem.empty());
  const Equation& eq = config.problem.front();
  std::span<const Equation> rest(config.problem.data() + 1, config.problem.size() - 1);
  const Degree d = config.degree;

  auto fail = [&](FailureReason why) {
    StepOutcome out{why, {}};
    out.steps.push_back({Rule::Fail, eq, std::nullopt, d, why});
    return out;
  };
  auto names = context_names(eq.context);
  auto show = [&](const Term& t) { return to_string(t, names); };

  if (!(type_of(eq.left) == type_of(eq.right)))
    return fail({FailureKind::TypeClash, show(eq.left), show(eq.right), 0.0, {}});

  const bool labs = eq.left.is(TermKind::Abs), rabs = eq.right.is(TermKind::Abs);
  auto [lh, largs] = head_args(eq.left);
  auto [rh, rargs] = head_args(eq.right);
  const bool lflex = !labs && lh.is(TermKind::Free);
  const bool rflex = !rabs && rh.is(TermKind::Free);
  const bool lrigid = !labs && !lflex;
  const bool rrigid = !rabs && !rflex;

  // Guards are evaluated independently so that their mutual exclusion can be
  // asserted.
  detail::Guards g;
  Degree dec_degree = 0.0;
  g.abs = labs && rabs;
  if (lrigid && rrigid) {
    dec_degree = largs.size() == rargs.size() ? tnorm(d, detail::head_similarity(rel, lh, rh)) : 0.0;
    g.dec = dec_degree >= mu.value();
  }
  g.sv = lflex && rflex && lh.name() == rh.name();
  g.ori = lrigid && rflex &&
          (lh.is(TermKind::Const) ||
           (lh.is(TermKind::Bound) && detail::position_of(rargs, lh.index())));
  g.lf = lflex && !rabs && !occurs_free(lh.name(), eq.right) &&
         (rh.is(TermKind::Const) || rh.is(TermKind::Free) ||
          (rh.is(TermKind::Bound) && detail::position_of(largs, rh.index())));
  if (g.count() > 1)
    throw std::logic_error("more than one rule applies to " + to_string(eq));

  if (g.abs) {
    Configuration next = config;
    std::vector<Binder> ctx = eq.context;
    ctx.push_back({eq.left.name(), eq.left.type()});
    next.problem.front() = {eq.left.body(), eq.right.body(), std::move(ctx)};
    StepOutcome out{next, {}};
    out.steps.push_back({Rule::Abs, eq, std::nullopt, d, std::nullopt});
    return out;
  }

  if (g.dec) {
    Configuration next;
    next.sigma = config.sigma;
    next.degree = dec_degree;
    next.problem.assign(rest.begin(), rest.end());
    for (std::size_t i = 0; i < largs.size(); ++i)
      next.problem.push_back({largs[i], rargs[i], eq.context});
    StepOutcome out{next, {}};
    out.steps.push_back({Rule::Dec, eq, std::nullopt, dec_degree, std::nullopt});
    return out;
  }

  if (g.sv) {
    std::vector<std::size_t> same;
    for (std::size_t i = 0; i < largs.size(); ++i)
      if (largs[i].index() == rargs[i].index()) same.push_back(i);
    std::vector<Type> htypes;
    for (auto i : same) htypes.push_back(largs[i].type());
    Term h = supply.next(arrows(htypes, type_of(eq.left)));
    Substitution theta;
    theta.bind(lh.name(), detail::projection_binding(largs, h, same));
    Configuration next;
    next.degree = d;
    for (const auto& e : rest) next.problem.push_back(detail::apply_to(e, theta));
    next.sigma = compose(config.sigma, theta);
    StepOutcome out{next, {}};
    out.steps.push_back({Rule::SV, eq, theta, d, std::nullopt});
    return out;
  }

  if (g.ori) {
    Configuration next = config;
    next.problem.front() = {eq.right, eq.left, eq.context};
    StepOutcome out{next, {}};
    out.steps.push_back({Rule::Ori, eq, std::nullopt, d, std::nullopt});
    return out;
  }

  if (g.lf) {
    StepOutcome out{Configuration{}, {}};
    out.steps.push_back({Rule::LF, eq, std::nullopt, d, std::nullopt});
    std::vector<TraceStep> inner;
    auto r = var_elim(eq.left, eq.right, eq.context, supply, &inner, d);
    if (auto* esc = std::get_if<BoundVarEscape>(&r)) {
      FailureReason why{FailureKind::BoundVarEscape, show(eq.left), show(eq.right), 0.0,
                        esc->variable};
      out.steps.insert(out.steps.end(), inner.begin(), inner.end() - 1);
      out.steps.push_back({Rule::Fail, eq, std::nullopt, d, why});
      out.next = why;
      return out;
    }
    std::set<std::string> vars = free_vars(eq.right);
    vars.insert(lh.name());
    Substitution theta = std::get<Substitution>(r).restrict(vars);
    out.steps.front().binding = theta;
    out.steps.insert(out.steps.end(), inner.begin(), inner.end());
    Configuration next;
    next.degree = d;
    for (const auto& e : rest) next.problem.push_back(detail::apply_to(e, theta));
    next.sigma = compose(config.sigma, theta);
    out.next = std::move(next);
    return out;
  }

  // Fail: classify.
  if (labs != rabs) return fail({FailureKind::NoRule, show(eq.left), show(eq.right), 0.0, {}});
  if (lrigid && rrigid)
    return fail({FailureKind::DegreeBelowCut, detail::head_name(lh, eq.context),
                 detail::head_name(rh, eq.context), mu.value(), {}});
  if (lflex && occurs_free(lh.name(), eq.right))
    return fail({FailureKind::OccursCheck, show(eq.left), show(eq.right), 0.0, lh.name()});
  if (lflex && rh.is(TermKind::Bound))
    return fail({FailureKind::BoundVarEscape, show(eq.left), show(eq.right), 0.0,
                 detail::head_name(rh, eq.context)});
  if (lrigid && rflex && lh.is(TermKind::Bound))
    return fail({FailureKind::BoundVarEscape, show(eq.left), show(eq.right), 0.0,
                 detail::head_name(lh, eq.context)});
  return fail({FailureKind::NoRule, show(eq.left), show(eq.right), 0.0, {}});
}

struct Success {
  Substitution unifier;  // restricted to the input's free variables, canonical names
  Substitution full;     // unrestricted, canonical names
  Substitution raw;      // unrestricted, names as generated during the run
  Degree degree = 1.0;
};

struct Failure {
  FailureReason reason;
};

struct Answer {
  std::variant<Success, Failure> result;
  std::vector<TraceStep> trace;
  std::vector<Measure> measures;  // one per configuration, ending with the final one
  Degree cut = 1.0;
  std::vector<std::string> input_vars;            // first-occurrence order
  std::map<std::string, std::string> renaming;    // generated name -> canonical name

  bool ok() const { return std::holds_alternative<Success>(result); }
  const Success& success() const { return std::get<Success>(result); }
  const Failure& failure() const { return std::get<Failure>(result); }
};

struct UnifyOptions {
  /// Names the fresh-variable supply and canonical renaming must avoid.
  std::set<std::string> reserved;
  /// Throw std::logic_error if the termination measure fails to decrease.
  bool check_measure = false;
};

/// True iff every consecutive pair of measures strictly decreases.
inline bool measure_decreases(std::span<const Measure> ms) {
  for (std::size_t i = 1; i < ms.size(); ++i)
    if (!(ms[i] < ms[i - 1])) return false;
  return true;
}

/// Runs the strategy on a set of equations between closed patterns.
/// Throws InputError if the sides of an equation have different types or
/// are not patterns.
inline Answer unify(std::span<const std::pair<Term, Term>> equations,
                    const SimilarityRelation& rel, CutValue mu,
                    const UnifyOptions& options = {}) {
  Answer ans;
  ans.cut = mu.value();
  Configuration c;
  std::vector<Term> input_vars;
  for (const auto& [t0, s0] : equations) {
    Term t = normalize(t0), s = normalize(s0);
    if (t.loose() || s.loose())
      throw InputError(ErrorKind::UnboundIdentifier, "unification sides must be closed terms");
    if (!(type_of(t) == type_of(s)))
      throw InputError(ErrorKind::TypeMismatch, to_string(t) + " : " + type_of(t).str() +
                                                    " vs " + to_string(s) + " : " +
                                                    type_of(s).str());
    for (const Term* side : {&t, &s})
      if (auto v = pattern_violation(*side))
        throw InputError(ErrorKind::NonPattern, to_string(*side) + ": argument " +
                                                    std::to_string(v->argument) + " of " +
                                                    v->variable + ": " + v->reason);
    free_vars_in_order(t, input_vars);
    free_vars_in_order(s, input_vars);
    c.problem.push_back({t, s, {}});
  }

  std::set<std::string> reserved = options.reserved;
  std::set<std::string> input_names;
  for (const Term& v : input_vars) {
    reserved.insert(v.name());
    input_names.insert(v.name());
    ans.input_vars.push_back(v.name());
  }
  FreshSupply supply(reserved);

  ans.measures.push_back(measure(c));
  auto record = [&](Measure m) {
    if (options.check_measure && !(m < ans.measures.back()))
      throw std::logic_error("termination measure did not decrease: " +
                             to_string(ans.measures.back()) + " -> " + to_string(m));
    ans.measures.push_back(std::move(m));
  };

  while (!c.problem.empty()) {
    StepOutcome out = step(c, rel, mu, supply);
    ans.trace.insert(ans.trace.end(), out.steps.begin(), out.steps.end());
    if (auto* why = std::get_if<FailureReason>(&out.next)) {
      record(Measure{});
      ans.result = Failure{*why};
      return ans;
    }
    c = std::get<Configuration>(std::move(out.next));
    record(measure(c));
  }

  Success s;
  s.raw = c.sigma;
  s.degree = c.degree;
  s.full = canonicalize_fresh(c.sigma, ans.input_vars, supply, &ans.renaming);
  s.unifier = canonicalize_fresh(c.sigma.restrict(input_names), ans.input_vars, supply);
  ans.result = std::move(s);
  return ans;
}

inline Answer unify(const Term& t, const Term& s, const SimilarityRelation& rel, CutValue mu,
                    const UnifyOptions& options = {}) {
  std::pair<Term, Term> eq{t, s};
  return unify(std::span<const std::pair<Term, Term>>(&eq, 1), rel, mu, options);
}

}  // namespace hopsu
