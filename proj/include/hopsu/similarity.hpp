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

// Fuzzy similarity relations under the minimum T-norm.
//
// Degrees are plain doubles. Every computation here is a min or a max over
// input degrees, so results are always bit-identical to some input degree
// (or to 0 / 1) and are compared exactly.

#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopsu/error.hpp"
#include "hopsu/kernel.hpp"
#include "hopsu/print.hpp"
#include "hopsu/term.hpp"

namespace hopsu {

using Degree = double;

/// Cut value mu with 0 < mu <= 1; mu == 1 is the crisp case.
class CutValue {
 public:
  explicit CutValue(Degree mu) : mu_(mu) {
    if (!(mu > 0.0 && mu <= 1.0))
      throw InputError(ErrorKind::DegreeOutOfRange,
                       "cut value must lie in (0, 1], got " + format_degree(mu));
  }
  Degree value() const { return mu_; }
  bool crisp() const { return mu_ == 1.0; }

 private:
  Degree mu_;
};

/// The minimum T-norm.
inline Degree tnorm(Degree a, Degree b) { return std::min(a, b); }

/// One user-supplied pair `sim f g d.`.
struct SimilarityPair {
  std::string left;
  std::string right;
  Degree degree;
};

/// A reflexive, symmetric, min-transitive fuzzy relation on the declared
/// constants. Pairs not stored have degree 0; identical symbols have 1.
class SimilarityRelation {
 public:
  SimilarityRelation() = default;

  /// The crisp relation: every distinct pair has degree 0.
  static SimilarityRelation identity(const Signature& sig) {
    SimilarityRelation r;
    r.constants_ = sig.constants;
    return r;
  }

  Degree degree(const std::string& f, const std::string& g) const {
    if (f == g) return 1.0;
    auto it = entries_.find(key(f, g));
    return it == entries_.end() ? 0.0 : it->second;
  }

  /// Stored pairs with positive degree, keyed by (min name, max name).
  const std::map<std::pair<std::string, std::string>, Degree>& entries() const {
    return entries_;
  }
  const std::map<std::string, Type>& constants() const { return constants_; }

  /// Constants g with R(f, g) > 0, including f itself.
  std::vector<std::string> similarity_class(const std::string& f) const {
    std::vector<std::string> out{f};
    for (const auto& [k, d] : entries_) {
      if (k.first == f) out.push_back(k.second);
      if (k.second == f) out.push_back(k.first);
    }
    return out;
  }

  /// Exhaustive check of R(f,h) >= min(R(f,g), R(g,h)) over all constants.
  bool is_min_transitive() const {
    for (const auto& [f, tf] : constants_)
      for (const auto& [g, tg] : constants_)
        for (const auto& [h, th] : constants_)
          if (degree(f, h) < tnorm(degree(f, g), degree(g, h))) return false;
    return true;
  }

 private:
  friend struct RelationBuilder;

  static std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  }

  std::map<std::pair<std::string, std::string>, Degree> entries_;
  std::map<std::string, Type> constants_;
};

/// A pair whose degree was raised by the transitive closure.
struct ClosureChange {
  std::string left;
  std::string right;
  Degree before;
  Degree after;
};

struct RelationBuilder {
  /// Symmetric completion followed by the max-min transitive closure.
  /// With `strict`, input that is not already min-transitive is rejected.
  static SimilarityRelation build(const Signature& sig, std::span<const SimilarityPair> pairs,
                                  bool strict = false,
                                  std::vector<ClosureChange>* changes = nullptr) {
    SimilarityRelation rel;
    rel.constants_ = sig.constants;
    for (const auto& p : pairs) {
      auto lt = sig.constants.find(p.left);
      auto rt = sig.constants.find(p.right);
      if (lt == sig.constants.end())
        throw InputError(ErrorKind::UndeclaredSymbol, "constant '" + p.left + "' in sim");
      if (rt == sig.constants.end())
        throw InputError(ErrorKind::UndeclaredSymbol, "constant '" + p.right + "' in sim");
      if (!(p.degree >= 0.0 && p.degree <= 1.0))
        throw InputError(ErrorKind::DegreeOutOfRange,
                         "sim " + p.left + " " + p.right + " " + format_degree(p.degree));
      if (p.degree == 0.0) continue;
      if (!(lt->second == rt->second))
        throw InputError(ErrorKind::TypeConflict,
                         p.left + " : " + lt->second.str() + " and " + p.right + " : " +
                             rt->second.str() + " have different types");
      if (p.left == p.right) {
        if (p.degree != 1.0)
          throw InputError(ErrorKind::DegreeOutOfRange,
                           "reflexive pair " + p.left + " must have degree 1");
        continue;
      }
      auto k = SimilarityRelation::key(p.left, p.right);
      auto [it, inserted] = rel.entries_.emplace(k, p.degree);
      if (!inserted && it->second != p.degree)
        throw InputError(ErrorKind::DegreeOutOfRange,
                         "conflicting degrees for " + p.left + " and " + p.right);
    }

    // Floyd-Warshall over the (max, min) semiring; only constants that occur
    // in some pair can gain entries.
    std::vector<std::string> nodes;
    for (const auto& [k, d] : rel.entries_) {
      nodes.push_back(k.first);
      nodes.push_back(k.second);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    const std::size_t n = nodes.size();
    std::vector<Degree> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = rel.degree(nodes[i], nodes[j]);
    const std::vector<Degree> original = m;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m[i * n + j] = std::max(m[i * n + j], tnorm(m[i * n + k], m[k * n + j]));

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Degree before = original[i * n + j];
        const Degree after = m[i * n + j];
        if (after == before) continue;
        if (strict)
          throw InputError(ErrorKind::NotTransitive,
                           "R(" + nodes[i] + ", " + nodes[j] + ") = " + format_degree(before) +
                               " but the min-transitive closure requires " +
                               format_degree(after));
        rel.entries_[SimilarityRelation::key(nodes[i], nodes[j])] = after;
        if (changes) changes->push_back({nodes[i], nodes[j], before, after});
      }
    return rel;
  }
};

inline SimilarityRelation build_relation(const Signature& sig,
                                         std::span<const SimilarityPair> pairs,
                                         bool strict = false,
                                         std::vector<ClosureChange>* changes = nullptr) {
  return RelationBuilder::build(sig, pairs, strict, changes);
}

/// Degree between two symbols (constants, free variables, or bound
/// variables in the same scope): 1 for the identical symbol, the relation
/// entry for two constants, and 0 otherwise.
inline Degree sym_degree(const SimilarityRelation& rel, const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return 0.0;
  switch (a.kind()) {
    case TermKind::Const:
      if (!(a.type() == b.type())) return 0.0;
      return rel.degree(a.name(), b.name());
    case TermKind::Free:
      return a.name() == b.name() && a.type() == b.type() ? 1.0 : 0.0;
    case TermKind::Bound:
      return a.index() == b.index() ? 1.0 : 0.0;
    default:
      return 0.0;
  }
}

namespace detail {

inline Degree degree_canonical(const SimilarityRelation& rel, const Term& t, const Term& s) {
  if (t.kind() != s.kind()) return 0.0;
  switch (t.kind()) {
    case TermKind::Abs:
      // Both binders become the same de Bruijn index.
      if (!(t.type() == s.type())) return 0.0;
      return degree_canonical(rel, t.body(), s.body());
    case TermKind::App: {
      Degree f = degree_canonical(rel, t.fn(), s.fn());
      if (f == 0.0) return 0.0;
      return tnorm(f, degree_canonical(rel, t.arg(), s.arg()));
    }
    default:
      return sym_degree(rel, t, s);
  }
}

}  // namespace detail

/// R(t, s) lifted to terms with the minimum T-norm. Both sides are
/// normalized first; structurally different terms get degree 0.
inline Degree term_degree(const SimilarityRelation& rel, const Term& t, const Term& s) {
  return detail::degree_canonical(rel, normalize(t), normalize(s));
}

/// As term_degree, for terms already in canonical form.
inline Degree canonical_degree(const SimilarityRelation& rel, const Term& t, const Term& s) {
  return detail::degree_canonical(rel, t, s);
}

}  // namespace hopsu
