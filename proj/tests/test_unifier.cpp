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
using fixtures::rule_names;

std::vector<std::string> v(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

TEST(Unify, ExampleSolvedAtPointFour) {
  Example1 ex;
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(0.4), {ex.reserved(), true});
  ASSERT_TRUE(ans.ok()) << ans.failure().reason.describe();
  EXPECT_EQ(ans.success().degree, 0.6);
  EXPECT_EQ(ans.success().unifier, ex.sigma_with("a"));
  EXPECT_EQ(rule_names(ans), v({"Abs", "Abs", "Dec", "LF", "VE1", "VE2", "Dec", "SV"}));
  EXPECT_EQ(to_string(ans.success().unifier, ans.input_vars),
            "{F := \\x:i. a (H x), G := \\y:i. \\x:i. H x}");
}

TEST(Unify, DegreesAlongTheTrace) {
  Example1 ex;
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(0.4));
  std::vector<Degree> ds;
  for (const auto& st : ans.trace) ds.push_back(st.degree_after);
  EXPECT_EQ(ds, (std::vector<Degree>{1, 1, 0.8, 0.8, 0.8, 0.8, 0.6, 0.6}));
}

TEST(Unify, LfBindingRestrictedToItsVariables) {
  Example1 ex;
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(0.4));
  const TraceStep& lf = ans.trace[3];
  ASSERT_EQ(lf.rule, Rule::LF);
  ASSERT_TRUE(lf.binding);
  EXPECT_EQ(lf.binding->domain(), (std::set<std::string>{"F", "G"}));
}

TEST(Unify, FullSubstitutionKeepsIntermediateBindings) {
  Example1 ex;
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(0.4), {ex.reserved(), false});
  ASSERT_TRUE(ans.ok());
  EXPECT_GT(ans.success().full.size(), ans.success().unifier.size());
  EXPECT_TRUE(ans.success().full.idempotent());
}

TEST(Unify, HighCutFailsBelowCut) {
  Example1 ex;
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(0.7));
  ASSERT_FALSE(ans.ok());
  const auto& r = ans.failure().reason;
  EXPECT_EQ(r.kind, FailureKind::DegreeBelowCut);
  EXPECT_EQ(r.left, "a");
  EXPECT_EQ(r.right, "b");
  EXPECT_EQ(r.required, 0.7);
  EXPECT_EQ(rule_names(ans), v({"Abs", "Abs", "Dec", "LF", "VE1", "VE2", "Fail"}));
}

TEST(Unify, CrispFailsAfterAbstractions) {
  Example1 ex;
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(1.0));
  ASSERT_FALSE(ans.ok());
  EXPECT_EQ(ans.failure().reason.kind, FailureKind::DegreeBelowCut);
  EXPECT_EQ(ans.failure().reason.left, "f");
  EXPECT_EQ(ans.failure().reason.right, "g");
  EXPECT_EQ(rule_names(ans), v({"Abs", "Abs", "Fail"}));
}

TEST(Unify, CyclicCrispProblemFailsOnOccursCheck) {
  Type ti = i();
  Term c = Term::constant("c", ii());
  Term F = Term::free("F", ti), G = Term::free("G", ti);
  std::vector<std::pair<Term, Term>> eqs{{F, Term::app(c, G)}, {G, Term::app(c, F)}};
  Answer ans = unify(eqs, SimilarityRelation{}, CutValue(1.0), {{"c", "F", "G"}, true});
  ASSERT_FALSE(ans.ok());
  EXPECT_EQ(ans.failure().reason.kind, FailureKind::OccursCheck);
  EXPECT_EQ(rule_names(ans), v({"LF", "VE1", "VE2", "Fail"}));
  EXPECT_EQ(to_string(ans.trace.back().selected), "H2 =?= c (c H2)");
}

TEST(Step, SameVariableKeepsAgreeingPositions) {
  // F(x,y) =?= F(x,z) under binders x, y, z.
  Term F = Term::free("F", iii());
  std::vector<Binder> ctx{{"x", i()}, {"y", i()}, {"z", i()}};
  Term x = Term::bound(2, i(), "x"), y = Term::bound(1, i(), "y"), z = Term::bound(0, i(), "z");
  Configuration c;
  c.problem.push_back({fixtures::app2(F, x, y), fixtures::app2(F, x, z), ctx});
  FreshSupply supply({"F"});
  StepOutcome out = step(c, SimilarityRelation{}, CutValue(1.0), supply);
  ASSERT_FALSE(out.failed());
  ASSERT_EQ(out.steps.size(), 1u);
  EXPECT_EQ(out.steps[0].rule, Rule::SV);
  EXPECT_EQ(to_string(*out.steps[0].binding), "{F := \\x:i. \\y:i. H1 x}");
  EXPECT_TRUE(std::get<Configuration>(out.next).problem.empty());
}

TEST(Step, DecompositionDegree) {
  Example1 ex;
  Configuration c;
  std::vector<Binder> ctx{{"x", i()}, {"y", i()}};
  c.problem.push_back({ex.t.body().body(), ex.s.body().body(), ctx});
  FreshSupply supply(ex.reserved());
  StepOutcome out = step(c, ex.rel, CutValue(0.4), supply);
  ASSERT_FALSE(out.failed());
  const auto& next = std::get<Configuration>(out.next);
  EXPECT_EQ(next.degree, 0.8);
  ASSERT_EQ(next.problem.size(), 2u);
  EXPECT_EQ(to_string(next.problem[0]), "F x =?= a (G y x)");
  EXPECT_EQ(to_string(next.problem[1]), "F y =?= b (G x y)");
}

TEST(VarElim, ExampleReturnsRestrictableSubstitution) {
  Example1 ex;
  std::vector<Binder> ctx{{"x", i()}, {"y", i()}};
  Term x = Term::bound(1, i(), "x"), y = Term::bound(0, i(), "y");
  Term flex = Term::app(ex.F, x);
  Term rhs = Term::app(Term::constant("a", ii()), fixtures::app2(ex.G, y, x));
  FreshSupply supply(ex.reserved());
  std::vector<TraceStep> trace;
  auto r = var_elim(flex, rhs, ctx, supply, &trace);
  ASSERT_TRUE(std::holds_alternative<Substitution>(r));
  Substitution phi = std::get<Substitution>(r).restrict({"F", "G"});
  EXPECT_EQ(to_string(phi, v({"F", "G"})), "{F := \\x:i. a (H2 x), G := \\y:i. \\x:i. H2 x}");
  ASSERT_EQ(trace.size(), 2u);
  EXPECT_EQ(trace[0].rule, Rule::VE1);
  EXPECT_EQ(trace[1].rule, Rule::VE2);
}

TEST(VarElim, CommonVariablesOfTwoFlexibleSides) {
  // F(x,y) =?= G(y,z)
  std::vector<Binder> ctx{{"x", i()}, {"y", i()}, {"z", i()}};
  Term x = Term::bound(2, i(), "x"), y = Term::bound(1, i(), "y"), z = Term::bound(0, i(), "z");
  Term F = Term::free("F", iii()), G = Term::free("G", iii());
  FreshSupply supply({"F", "G"});
  auto r = var_elim(fixtures::app2(F, x, y), fixtures::app2(G, y, z), ctx, supply);
  ASSERT_TRUE(std::holds_alternative<Substitution>(r));
  EXPECT_EQ(to_string(std::get<Substitution>(r), v({"F", "G"})),
            "{F := \\x:i. \\y:i. H1 y, G := \\y:i. \\z:i. H1 y}");
}

TEST(VarElim, BoundVariableEscape) {
  // F(x) =?= c(y)
  std::vector<Binder> ctx{{"x", i()}, {"y", i()}};
  Term F = Term::free("F", ii());
  Term c = Term::constant("c", ii());
  FreshSupply supply({"F"});
  auto r = var_elim(Term::app(F, Term::bound(1, i(), "x")), Term::app(c, Term::bound(0, i(), "y")),
                    ctx, supply);
  ASSERT_TRUE(std::holds_alternative<BoundVarEscape>(r));
  EXPECT_EQ(std::get<BoundVarEscape>(r).variable, "y");
}

TEST(VarElim, FunctionTypedArgumentIsEtaExpanded) {
  // F =?= h (\z. a z)  with h : (i -> i) -> i
  Type hi = Type::arrow(ii(), i());
  Term F = Term::free("F", i());
  Term h = Term::constant("h", hi), a = Term::constant("a", ii());
  Term rhs = normalize(Term::app(h, a));
  FreshSupply supply({"F"});
  std::vector<TraceStep> trace;
  auto r = var_elim(F, rhs, {}, supply, &trace);
  ASSERT_TRUE(std::holds_alternative<Substitution>(r));
  Substitution s = std::get<Substitution>(r);
  EXPECT_EQ(apply_subst(F, s), rhs);
  EXPECT_EQ(to_string(trace[0].binding->bindings().at("F")), "h (\\x:i. H1 x)");
}

TEST(Unify, EtaExample) {
  Term F = Term::free("F", ii());
  Term lhs = Term::abs("x", i(), Term::app(F, Term::bound(0, i())));
  Term rhs = Term::abs("x", i(), Term::app(Term::constant("c", ii()), Term::bound(0, i())));
  Answer ans = unify(lhs, rhs, SimilarityRelation{}, CutValue(1.0));
  ASSERT_TRUE(ans.ok());
  EXPECT_EQ(*ans.success().unifier.find("F"), rhs);
}

TEST(Unify, RigidBoundHeadOrientsThenEliminates) {
  // \x. x =?= \x. F x  with x : i
  Term F = Term::free("F", ii());
  Term lhs = Term::abs("x", i(), Term::bound(0, i()));
  Term rhs = Term::abs("x", i(), Term::app(F, Term::bound(0, i())));
  Answer ans = unify(lhs, rhs, SimilarityRelation{}, CutValue(1.0), {{}, true});
  ASSERT_TRUE(ans.ok());
  EXPECT_EQ(rule_names(ans), v({"Abs", "Ori", "LF", "VE1"}));
  EXPECT_EQ(to_string(*ans.success().unifier.find("F")), "\\x:i. x");
}

TEST(Unify, BoundHeadNotAmongArgumentsFails) {
  // \x.\y. x =?= \x.\y. F y
  Term F = Term::free("F", ii());
  Term lhs = Term::abs("x", i(), Term::abs("y", i(), Term::bound(1, i())));
  Term rhs = Term::abs("x", i(), Term::abs("y", i(), Term::app(F, Term::bound(0, i()))));
  Answer ans = unify(lhs, rhs, SimilarityRelation{}, CutValue(1.0));
  ASSERT_FALSE(ans.ok());
  EXPECT_EQ(ans.failure().reason.kind, FailureKind::BoundVarEscape);
  EXPECT_EQ(ans.failure().reason.variable, "x");
}

TEST(Unify, SameVariableWithNoArgumentsIsRenamed) {
  // Every position agrees, so SV binds X to a fresh variable of its type.
  Term X = Term::free("X", i());
  Answer ans = unify(X, X, SimilarityRelation{}, CutValue(1.0));
  ASSERT_TRUE(ans.ok());
  EXPECT_EQ(to_string(ans.success().unifier, ans.input_vars), "{X := H}");
  EXPECT_EQ(ans.success().degree, 1.0);
}

TEST(Unify, MultipleEquationsShareOneConfiguration) {
  Term X = Term::free("X", i()), Y = Term::free("Y", i());
  Term a = Term::constant("a", i());
  std::vector<std::pair<Term, Term>> eqs{{X, Y}, {Y, a}};
  Answer ans = unify(eqs, SimilarityRelation{}, CutValue(1.0));
  ASSERT_TRUE(ans.ok());
  EXPECT_EQ(*ans.success().unifier.find("X"), a);
  EXPECT_EQ(*ans.success().unifier.find("Y"), a);
}

TEST(Unify, RejectsNonPatternAndTypeClash) {
  Term F = Term::free("F", iii());
  Term x = Term::bound(0, i());
  Term np = Term::abs("x", i(), fixtures::app2(F, x, x));
  Term a = Term::abs("x", i(), Term::constant("a", i()));
  EXPECT_THROW(unify(np, a, SimilarityRelation{}, CutValue(1.0)), InputError);
  EXPECT_THROW(unify(Term::constant("a", i()), a, SimilarityRelation{}, CutValue(1.0)), InputError);
}

TEST(Measure, BottomAndExampleTrace) {
  EXPECT_EQ(measure(std::span<const Equation>{}), Measure{});
  Example1 ex;
  Answer ans = unify(ex.t, ex.s, ex.rel, CutValue(0.4));
  // Six top-level steps, seven configurations.
  ASSERT_EQ(ans.measures.size(), 7u);
  EXPECT_TRUE(measure_decreases(ans.measures));
  EXPECT_EQ(ans.measures.front().free_vars, 2u);
}

TEST(Measure, MultisetOrdering) {
  Measure a{1, {5, 3}, 0}, b{1, {5, 2, 2, 2}, 0}, c{1, {5}, 4};
  EXPECT_TRUE(b < a);   // 3 replaced by smaller elements
  EXPECT_TRUE(c < b);   // proper sub-multiset
  EXPECT_FALSE(a < a);
  EXPECT_TRUE((Measure{0, {9, 9}, 3}) < (Measure{1, {}, 0}));
}

}  // namespace
}  // namespace hopsu
