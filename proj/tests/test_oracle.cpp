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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hopsu/hopsu.hpp"

namespace hopsu {
namespace {

using fixtures::Example1;
using fixtures::i;
using fixtures::ii;
using fixtures::iii;

struct FirstOrder {
  Signature sig;
  SimilarityRelation rel;
  FirstOrder() {
    sig.base_types = {"i"};
    sig.constants = {{"f", ii()}, {"g", ii()}, {"a", i()}, {"b", i()}};
    std::vector<SimilarityPair> ps{{"f", "g", 0.8}, {"a", "b", 0.6}};
    rel = build_relation(sig, ps);
  }
};

TEST(EnumerateTerms, DepthBoundsHeadNesting) {
  std::vector<Term> heads{Term::constant("a", i()), Term::constant("f", ii())};
  EXPECT_EQ(enumerate_terms(i(), 1, heads).size(), 1u);   // a
  EXPECT_EQ(enumerate_terms(i(), 2, heads).size(), 2u);   // a, f a
  EXPECT_EQ(enumerate_terms(i(), 3, heads).size(), 3u);   // a, f a, f (f a)
  // i -> i: \x. x, \x. a, \x. f x, \x. f a at depth 2
  auto fns = enumerate_terms(ii(), 2, heads);
  EXPECT_EQ(fns.size(), 4u);
  for (const Term& t : fns) EXPECT_EQ(normalize(t), t);
}

TEST(EnumerateUnifiers, SimilarArgumentsRankedByDegree) {
  FirstOrder w;
  Term X = Term::free("X", i());
  Term lhs = Term::app(Term::constant("f", ii()), X);
  Term rhs = Term::app(Term::constant("g", ii()), Term::constant("a", i()));
  EnumerationBudget b;
  b.max_term_depth = 1;
  auto res = enumerate_unifiers(lhs, rhs, w.rel, CutValue(0.5), b);
  ASSERT_TRUE(res.exhaustive);
  ASSERT_EQ(res.unifiers.size(), 2u);
  EXPECT_EQ(*res.unifiers[0].substitution.find("X"), Term::constant("a", i()));
  EXPECT_EQ(res.unifiers[0].degree, 0.8);
  EXPECT_EQ(*res.unifiers[1].substitution.find("X"), Term::constant("b", i()));
  EXPECT_EQ(res.unifiers[1].degree, 0.6);
  // The cut removes the weaker one.
  EXPECT_EQ(enumerate_unifiers(lhs, rhs, w.rel, CutValue(0.7), b).unifiers.size(), 1u);
}

TEST(EnumerateUnifiers, GroundIdenticalTermsHaveEmptyUnifier) {
  FirstOrder w;
  Term t = Term::app(Term::constant("f", ii()), Term::constant("a", i()));
  auto res = enumerate_unifiers(t, t, w.rel, CutValue(1.0), {});
  ASSERT_EQ(res.unifiers.size(), 1u);
  EXPECT_TRUE(res.unifiers[0].substitution.empty());
  EXPECT_EQ(res.unifiers[0].degree, 1.0);
}

TEST(EnumerateUnifiers, DissimilarConstantsAboveCut) {
  FirstOrder w;
  auto res = enumerate_unifiers(Term::constant("a", i()), Term::constant("b", i()), w.rel,
                                CutValue(0.7), {});
  EXPECT_TRUE(res.unifiers.empty());
}

TEST(EnumerateUnifiers, BudgetLimits) {
  FirstOrder w;
  Term X = Term::free("X", i());
  EnumerationBudget zero;
  zero.max_term_depth = 0;
  EXPECT_THROW(enumerate_unifiers(X, X, w.rel, CutValue(1.0), zero), InputError);
  EnumerationBudget tiny;
  tiny.max_term_depth = 2;
  tiny.max_subst_candidates = 1;
  auto res = enumerate_unifiers(X, Term::constant("a", i()), w.rel, CutValue(1.0), tiny);
  EXPECT_FALSE(res.exhaustive);
  EXPECT_EQ(res.examined, 1u);
}

TEST(EnumerateUnifiers, ExampleAgreesWithUnifier) {
  Example1 ex;
  EnumerationBudget b;
  b.max_term_depth = 2;
  auto res = enumerate_unifiers(ex.t, ex.s, ex.rel, CutValue(0.4), b);
  ASSERT_TRUE(res.exhaustive);
  ASSERT_FALSE(res.unifiers.empty());
  EXPECT_EQ(res.unifiers.front().degree, 0.6);
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(0.4));
  std::vector<Term> vars{ex.F, ex.G};
  for (const auto& u : res.unifiers) {
    EXPECT_LE(u.degree, ans.success().degree);
    auto sub = subsumes(ans.success().unifier, u.substitution, ex.rel, CutValue(0.4), vars, b);
    EXPECT_EQ(sub.verdict, Verdict::Yes) << to_string(u.substitution);
  }
}

TEST(Subsumes, ComputedUnifierIsMoreGeneralThanGroundOne) {
  Example1 ex;
  std::vector<Term> vars{ex.F, ex.G};
  auto r = subsumes(ex.sigma_with("a"), ex.ground_with("a"), ex.rel, CutValue(0.4), vars, {});
  ASSERT_EQ(r.verdict, Verdict::Yes);
  Term expected = Term::abs("x", i(), Term::app(Term::constant("a", ii()), Term::bound(0, i())));
  ASSERT_TRUE(r.witness.find("H"));
  EXPECT_EQ(*r.witness.find("H"), expected);
}

TEST(Subsumes, SimilarHeadsAreMutuallyGeneral) {
  Example1 ex;
  std::vector<Term> vars{ex.F, ex.G};
  Substitution s1 = ex.sigma_with("a"), s2 = ex.sigma_with("b");
  EXPECT_EQ(subsumes(s1, s2, ex.rel, CutValue(0.4), vars, {}).verdict, Verdict::Yes);
  EXPECT_EQ(subsumes(s2, s1, ex.rel, CutValue(0.4), vars, {}).verdict, Verdict::Yes);
  // A definite answer needs candidates as deep as \x. b (H x).
  EnumerationBudget deep;
  deep.max_term_depth = 3;
  EXPECT_EQ(subsumes(s1, s2, ex.rel, CutValue(0.7), vars, {}).verdict, Verdict::Inconclusive);
  EXPECT_EQ(subsumes(s1, s2, ex.rel, CutValue(0.7), vars, deep).verdict, Verdict::No);
}

TEST(Subsumes, Reflexive) {
  Example1 ex;
  std::vector<Term> vars{ex.F, ex.G};
  for (const char* h : {"a", "b", "c"}) {
    Substitution s = ex.sigma_with(h);
    EXPECT_EQ(subsumes(s, s, ex.rel, CutValue(1.0), vars, {}).verdict, Verdict::Yes);
  }
}

TEST(Subsumes, GroundCannotSubsumeGeneral) {
  Example1 ex;
  std::vector<Term> vars{ex.F, ex.G};
  EXPECT_EQ(subsumes(ex.ground_with("a"), ex.sigma_with("a"), ex.rel, CutValue(0.4), vars, {})
                .verdict,
            Verdict::No);
}

TEST(Subsumes, DepthCapIsInconclusive) {
  Example1 ex;
  std::vector<Term> vars{ex.F, ex.G};
  EnumerationBudget b;
  b.max_term_depth = 1;
  // psi needs H |-> \x. a x, which is deeper than the cap allows.
  EXPECT_EQ(subsumes(ex.sigma_with("a"), ex.ground_with("a"), ex.rel, CutValue(0.4), vars, b)
                .verdict,
            Verdict::Inconclusive);
}

TEST(CrispUnify, SyntacticExamples) {
  Term c = Term::constant("c", ii());
  Term F = Term::free("F", ii());
  Term x = Term::bound(0, i());
  Answer ok = crisp_unify(Term::abs("x", i(), Term::app(F, x)), Term::abs("x", i(), Term::app(c, x)));
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ(ok.success().degree, 1.0);
  EXPECT_EQ(to_string(*ok.success().unifier.find("F")), "\\x:i. c x");

  Term d = Term::constant("d", ii());
  Answer clash = crisp_unify(Term::abs("x", i(), Term::app(c, x)), Term::abs("x", i(), Term::app(d, x)));
  ASSERT_FALSE(clash.ok());
  EXPECT_EQ(clash.failure().reason.kind, FailureKind::DegreeBelowCut);
}

TEST(GroundInstance, FillsRemainingVariables) {
  Example1 ex;
  std::vector<Term> vars{ex.F, ex.G};
  std::vector<Term> heads{Term::constant("a", ii())};
  auto g = ground_instance(ex.sigma_with("b"), vars, heads);
  ASSERT_TRUE(g);
  for (const auto& [k, v] : g->bindings()) EXPECT_TRUE(free_vars(v).empty()) << k;
  // Only functions of type i -> i are needed, so \x. x is enough.
  EXPECT_EQ(to_string(*g->find("G")), "\\y:i. \\x:i. x");
}

TEST(GroundInstance, UninhabitedType) {
  Term X = Term::free("X", i());
  Substitution s;
  std::vector<Term> vars{X};
  EXPECT_FALSE(ground_instance(s, vars, std::vector<Term>{}));
}

}  // namespace
}  // namespace hopsu
