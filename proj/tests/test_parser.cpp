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

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hopsu/hopsu.hpp"

namespace hopsu {
namespace {

std::string problem(const std::string& name) {
  std::ifstream in(std::string(HOPSU_PROBLEMS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(std::string_view text, const ParseOptions& opts = {}) {
  try {
    parse_problem(text, opts);
  } catch (const InputError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::Syntax;
}

std::string message_of(std::string_view text) {
  try {
    parse_problem(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(Parse, ExampleFileMatchesHandBuiltTerms) {
  ProblemFile pf = parse_problem(problem("example1.hopsu"));
  fixtures::Example1 ex;
  ASSERT_EQ(pf.equations.size(), 1u);
  EXPECT_EQ(pf.equations[0].first, ex.t);
  EXPECT_EQ(pf.equations[0].second, ex.s);
  EXPECT_EQ(pf.cut, 0.4);
  EXPECT_EQ(pf.similarities.size(), 4u);
  EXPECT_EQ(pf.relation().entries(), ex.rel.entries());
  Answer ans = unify(pf.equations, pf.relation(), CutValue(*pf.cut));
  ASSERT_TRUE(ans.ok());
  EXPECT_EQ(ans.success().degree, 0.6);
}

TEST(Parse, TrivialProblem) {
  ProblemFile pf = parse_problem("type i. var X : i. unify X =?= X.");
  ASSERT_EQ(pf.equations.size(), 1u);
  Answer ans = unify(pf.equations, pf.relation(), CutValue(1.0));
  ASSERT_TRUE(ans.ok());
  EXPECT_EQ(to_string(ans.success().unifier, ans.input_vars), "{X := H}");
}

TEST(Parse, StatementsInAnyOrderAndComments) {
  ProblemFile pf = parse_problem(
      "unify F =?= a.  # comment\n"
      "var F : i.\n"
      "const a : i.\n"
      "type i.\n");
  EXPECT_EQ(pf.equations[0].second, Term::constant("a", Type::base("i")));
}

TEST(Parse, ParenthesizedTypesAndTrailingLambda) {
  ProblemFile pf = parse_problem(
      "type i. const h : (i -> i) -> i. var F : i -> i.\n"
      "unify h \\x:i. F x =?= h (\\y:i. F y).");
  EXPECT_EQ(pf.equations[0].first, pf.equations[0].second);
}

TEST(Parse, NonPatternReportsPosition) {
  std::string text = problem("nonpattern.hopsu");
  EXPECT_EQ(kind_of(text), ErrorKind::NonPattern);
  std::string msg = message_of(text);
  EXPECT_NE(msg.find("4:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("argument 2 of F"), std::string::npos) << msg;
  ParseOptions lax;
  lax.require_patterns = false;
  EXPECT_NO_THROW(parse_problem(text, lax));
}

TEST(Parse, Errors) {
  EXPECT_EQ(kind_of("type i. var X : i. unify X =?= X"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("type i. var x : i. unify x =?= x."), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("type i. var X : i."), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("type i. var X : i. unify X =?= Y."), ErrorKind::UndeclaredSymbol);
  EXPECT_EQ(kind_of("type i. var X : i. unify X =?= y."), ErrorKind::UnboundIdentifier);
  EXPECT_EQ(kind_of("type i. type i. var X : i. unify X =?= X."), ErrorKind::DuplicateDeclaration);
  EXPECT_EQ(kind_of("type i. const a : i. var a : i. unify a =?= a."), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("type i. const a : i. const a : i. var X : i. unify X =?= a."),
            ErrorKind::DuplicateDeclaration);
  EXPECT_EQ(kind_of("type i. var X : i. cut 0.5. cut 0.6. unify X =?= X."),
            ErrorKind::DuplicateDeclaration);
  EXPECT_EQ(kind_of("type i. var X : i. cut 0. unify X =?= X."), ErrorKind::DegreeOutOfRange);
  EXPECT_EQ(kind_of("type i. const a : i. const b : i. sim a b 1.5. var X : i. unify X =?= a."),
            ErrorKind::DegreeOutOfRange);
  EXPECT_EQ(kind_of("type i. const a : i. const f : i -> i. sim a f 0.5. var X : i. unify X =?= a."),
            ErrorKind::TypeConflict);
  EXPECT_EQ(kind_of("type i. const a : i. var F : i -> i. unify F =?= a."), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_of("type i. const a : i. var X : i. unify a X =?= X."), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_of("type i. var X : o. unify X =?= X."), ErrorKind::UndeclaredSymbol);
  EXPECT_EQ(kind_of("type i. var X : i. unify \\X:i. X =?= X."), ErrorKind::Syntax);
}

TEST(Parse, ErrorMessageHasLineAndColumn) {
  std::string msg = message_of("type i.\nvar X : i.\nunify X =?= Q.\n");
  EXPECT_NE(msg.find("3:13:"), std::string::npos) << msg;
}

TEST(Parse, PrintRoundTrip) {
  for (const char* f : {"example1.hopsu", "cyclic.hopsu", "eta.hopsu"}) {
    ProblemFile pf = parse_problem(problem(f));
    std::string printed = print_problem(pf);
    EXPECT_EQ(parse_problem(printed), pf) << printed;
    EXPECT_EQ(print_problem(parse_problem(printed)), printed);
  }
}

TEST(ParseTerm, AgainstSignature) {
  fixtures::Example1 ex;
  Term t = parse_term("\\x:i. \\y:i. f (F x) (F y)", ex.sig);
  EXPECT_EQ(t, ex.t);
  Signature ext = ex.sig;
  ext.variables.emplace("H", fixtures::ii());
  EXPECT_EQ(parse_term("\\x:i. a (H x)", ext), *ex.sigma_with("a").find("F"));
  EXPECT_THROW(parse_term("\\x:i. a (H x)", ex.sig), InputError);
  EXPECT_THROW(parse_term("a a", ex.sig), InputError);
  EXPECT_EQ(parse_type("(i -> i) -> i", ex.sig).str(), "(i -> i) -> i");
}

}  // namespace
}  // namespace hopsu
