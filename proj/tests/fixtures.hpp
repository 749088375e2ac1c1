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

#include <string>
#include <vector>

#include "hopsu/hopsu.hpp"

namespace hopsu::fixtures {

inline Type i() { return Type::base("i"); }
inline Type ii() { return Type::arrow(i(), i()); }
inline Type iii() { return Type::arrow(i(), ii()); }

inline Term app2(Term h, Term a, Term b) { return Term::app(Term::app(std::move(h), std::move(a)), std::move(b)); }

/// t = \x.\y. f (F x) (F y),  s = \x.\y. g (a (G y x)) (b (G x y)),
/// R(f,g) = 0.8, R(a,b) = 0.6, R(a,c) = R(b,c) = 0.5.
struct Example1 {
  Signature sig;
  SimilarityRelation rel;
  Term t, s;
  Term F, G;

  Example1() {
    sig.base_types = {"i"};
    sig.constants = {{"f", iii()}, {"g", iii()}, {"a", ii()}, {"b", ii()}, {"c", ii()}};
    sig.variables = {{"F", ii()}, {"G", iii()}};
    std::vector<SimilarityPair> ps{{"f", "g", 0.8}, {"a", "b", 0.6}, {"a", "c", 0.5}, {"b", "c", 0.5}};
    rel = build_relation(sig, ps);
    F = Term::free("F", ii());
    G = Term::free("G", iii());
    Term x = Term::bound(1, i(), "x"), y = Term::bound(0, i(), "y");
    Term f = Term::constant("f", iii()), g = Term::constant("g", iii());
    Term a = Term::constant("a", ii()), b = Term::constant("b", ii());
    t = Term::abs("x", i(), Term::abs("y", i(), app2(f, Term::app(F, x), Term::app(F, y))));
    s = Term::abs("x", i(), Term::abs("y", i(), app2(g, Term::app(a, app2(G, y, x)),
                                                     Term::app(b, app2(G, x, y)))));
  }

  std::set<std::string> reserved() const { return {"f", "g", "a", "b", "c", "F", "G"}; }

  /// sigma_k = {F |-> \x. <head>(H x), G |-> \y.\x. H x}.
  Substitution sigma_with(const std::string& head) const {
    Term H = Term::free("H", ii());
    Substitution s;
    s.bind("F", Term::abs("x", i(), Term::app(Term::constant(head, ii()),
                                              Term::app(H, Term::bound(0, i())))));
    s.bind("G", Term::abs("y", i(), Term::abs("x", i(), Term::app(H, Term::bound(0, i())))));
    return s;
  }

  /// {F |-> \x. <outer>(a x), G |-> \y.\x. a x}.
  Substitution ground_with(const std::string& outer) const {
    Term a = Term::constant("a", ii());
    Substitution s;
    s.bind("F", Term::abs("x", i(), Term::app(Term::constant(outer, ii()),
                                              Term::app(a, Term::bound(0, i())))));
    s.bind("G", Term::abs("y", i(), Term::abs("x", i(), Term::app(a, Term::bound(0, i())))));
    return s;
  }
};

inline std::vector<std::string> rule_names(const Answer& ans) {
  std::vector<std::string> out;
  for (const auto& st : ans.trace) out.emplace_back(to_string(st.rule));
  return out;
}

}  // namespace hopsu::fixtures
