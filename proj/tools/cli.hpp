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

// Command-line driver: solve, degree, check, verify.
//
// Exit codes: 0 success, 1 no unifier, 2 input error, 3 oracle discrepancy.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hopsu/hopsu.hpp"

namespace hopsu::cli {

enum Exit { kSuccess = 0, kFailure = 1, kInputError = 2, kDiscrepancy = 3 };

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Free variables of the unifier's range that the input did not declare.
inline std::vector<Term> fresh_variables(const Substitution& sigma,
                                         std::span<const std::string> order,
                                         const Signature& sig) {
  std::vector<Term> seen;
  std::vector<std::string> visit(order.begin(), order.end());
  for (const auto& [name, value] : sigma.bindings())
    if (std::find(visit.begin(), visit.end(), name) == visit.end()) visit.push_back(name);
  for (const auto& name : visit)
    if (const Term* v = sigma.find(name)) free_vars_in_order(*v, seen);
  std::vector<Term> out;
  for (const Term& v : seen)
    if (!sig.variables.count(v.name())) out.push_back(v);
  return out;
}

/// The stable machine-readable form of an answer.
inline Json answer_json(const Answer& ans, const Signature& sig, bool full_subst) {
  Json j;
  j["status"] = ans.ok() ? "success" : "failure";
  j["degree"] = ans.ok() ? Json(ans.success().degree) : Json(nullptr);
  j["cut"] = ans.cut;
  Json unifier = Json::array();
  Json fresh = Json::array();
  if (ans.ok()) {
    const Substitution& s = full_subst ? ans.success().full : ans.success().unifier;
    std::vector<std::string> order = ans.input_vars;
    for (const auto& [name, value] : s.bindings())
      if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    for (const auto& name : order)
      if (const Term* v = s.find(name)) unifier.push_back({{"var", name}, {"term", to_string(*v)}});
    for (const Term& v : fresh_variables(s, order, sig))
      fresh.push_back({{"var", v.name()}, {"type", v.type().str()}});
  }
  j["unifier"] = unifier;
  j["reason"] = ans.ok() ? Json(nullptr) : Json(ans.failure().reason.describe());
  Json trace = Json::array();
  for (const auto& st : ans.trace)
    trace.push_back({{"rule", std::string(to_string(st.rule))},
                     {"equation", to_string(st.selected)},
                     {"degree", st.degree_after}});
  j["trace"] = trace;
  j["fresh_vars"] = fresh;
  return j;
}

inline void print_answer(std::ostream& out, const Answer& ans, const Signature& sig,
                         bool trace, bool full_subst) {
  if (trace) {
    out << "trace:\n";
    for (const auto& st : ans.trace) out << (st.nested() ? "    " : "  ") << to_string(st) << "\n";
  }
  if (!ans.ok()) {
    out << "status: failure\n";
    out << "reason: " << ans.failure().reason.describe() << "\n";
    out << "cut: " << format_degree(ans.cut) << "\n";
    return;
  }
  const Success& s = ans.success();
  const Substitution& shown = full_subst ? s.full : s.unifier;
  out << "status: success\n";
  out << "degree: " << format_degree(s.degree) << "\n";
  out << "cut: " << format_degree(ans.cut) << "\n";
  out << "unifier:\n";
  std::vector<std::string> order = ans.input_vars;
  for (const auto& [name, value] : shown.bindings())
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  for (const auto& name : order)
    if (const Term* v = shown.find(name)) out << "  " << name << " := " << to_string(*v) << "\n";
  auto fresh = fresh_variables(shown, order, sig);
  if (!fresh.empty()) {
    out << "fresh:\n";
    for (const Term& v : fresh) out << "  " << v.name() << " : " << v.type().str() << "\n";
  }
}

inline std::set<std::string> declared_names(const ProblemFile& pf) {
  std::set<std::string> out;
  for (const auto& [n, t] : pf.constants) out.insert(n);
  for (const auto& [n, t] : pf.variables) out.insert(n);
  return out;
}

struct SolveArgs {
  std::string file;
  std::optional<double> cut;
  bool crisp = false, trace = false, json = false, full_subst = false, strict = false;
  std::string tnorm = "min";
};

inline void require_min_tnorm(const std::string& name) {
  if (name != "min")
    throw InputError(ErrorKind::UnsupportedTNorm,
                     "only the minimum T-norm is supported (got '" + name + "')");
}

inline int solve(const SolveArgs& a, std::ostream& out) {
  require_min_tnorm(a.tnorm);
  ProblemFile pf = parse_problem(read_file(a.file));
  Signature sig = pf.signature();
  SimilarityRelation rel = a.crisp ? SimilarityRelation::identity(sig) : pf.relation(a.strict);
  CutValue mu(a.crisp ? 1.0 : a.cut.value_or(pf.cut.value_or(1.0)));
  Answer ans = unify(pf.equations, rel, mu, {declared_names(pf), false});
  if (a.json)
    out << answer_json(ans, sig, a.full_subst).dump(2) << "\n";
  else
    print_answer(out, ans, sig, a.trace, a.full_subst);
  return ans.ok() ? kSuccess : kFailure;
}

inline int degree(const std::string& file, bool strict, std::ostream& out) {
  ParseOptions opts;
  opts.require_patterns = false;
  ProblemFile pf = parse_problem(read_file(file), opts);
  SimilarityRelation rel = pf.relation(strict);
  Degree d = 1.0;
  for (std::size_t k = 0; k < pf.equations.size(); ++k) {
    const auto& [l, r] = pf.equations[k];
    Degree e = term_degree(rel, l, r);
    out << "equation " << k + 1 << ": " << format_degree(e) << "\n";
    d = tnorm(d, e);
  }
  out << "degree: " << format_degree(d) << "\n";
  return kSuccess;
}

inline int check(const std::string& file, bool strict, std::ostream& out) {
  ParseOptions opts;
  opts.require_patterns = false;
  opts.require_unify = false;
  ProblemFile pf = parse_problem(read_file(file), opts);
  std::vector<ClosureChange> changes;
  SimilarityRelation rel = pf.relation(strict, &changes);
  for (const auto& c : changes)
    out << "closure: R(" << c.left << ", " << c.right << ") " << format_degree(c.before)
        << " -> " << format_degree(c.after) << "\n";
  out << (changes.empty() ? "relation: min-transitive as given\n" : "relation: closed\n");
  for (const auto& [k, d] : rel.entries())
    out << "  R(" << k.first << ", " << k.second << ") = " << format_degree(d) << "\n";
  return kSuccess;
}

struct VerifyArgs {
  std::string file;
  std::size_t depth = 2;
  std::size_t budget = 200000;
  std::optional<double> cut;
};

inline int verify(const VerifyArgs& a, std::ostream& out) {
  ProblemFile pf = parse_problem(read_file(a.file));
  Signature sig = pf.signature();
  SimilarityRelation rel = pf.relation();
  CutValue mu(a.cut.value_or(pf.cut.value_or(1.0)));
  Answer ans = unify(pf.equations, rel, mu, {declared_names(pf), true});

  EnumerationBudget budget;
  budget.max_term_depth = a.depth;
  budget.max_subst_candidates = a.budget;
  EnumerationResult en = enumerate_unifiers(pf.equations, rel, mu, budget);

  int problems = 0;
  auto report = [&](const std::string& msg) {
    out << "DISCREPANCY: " << msg << "\n";
    ++problems;
  };
  out << "unifier: " << (ans.ok() ? "success, degree " + format_degree(ans.success().degree)
                                   : "failure, " + ans.failure().reason.describe())
      << "\n";
  out << "enumerated: " << en.unifiers.size() << " unifiers from " << en.examined
      << " candidates" << (en.exhaustive ? "" : " (budget exhausted)") << "\n";

  std::vector<Term> vars;
  for (const auto& [l, r] : pf.equations) {
    free_vars_in_order(l, vars);
    free_vars_in_order(r, vars);
  }
  if (ans.ok()) {
    const Success& s = ans.success();
    Degree d = 1.0;
    for (const auto& [l, r] : pf.equations)
      d = tnorm(d, term_degree(rel, apply_subst(l, s.unifier), apply_subst(r, s.unifier)));
    if (d != s.degree)
      report("instantiated sides have degree " + format_degree(d) + ", reported " +
             format_degree(s.degree));
    if (!en.unifiers.empty() && s.degree < en.unifiers.front().degree)
      report("degree " + format_degree(s.degree) + " below enumerated maximum " +
             format_degree(en.unifiers.front().degree));
    std::size_t yes = 0, no = 0, unknown = 0;
    for (const auto& tau : en.unifiers) {
      auto r = subsumes(s.unifier, tau.substitution, rel, mu, vars, budget);
      if (r.verdict == Verdict::Yes) ++yes;
      if (r.verdict == Verdict::Inconclusive) ++unknown;
      if (r.verdict == Verdict::No) {
        ++no;
        report("unifier is not more general than " + to_string(tau.substitution));
      }
    }
    out << "generality: " << yes << " yes, " << no << " no, " << unknown << " inconclusive\n";
    if (en.unifiers.empty() && en.exhaustive) {
      std::vector<Term> heads;
      for (const auto& [n, t] : rel.constants()) heads.push_back(Term::constant(n, t));
      auto g = ground_instance(s.unifier, vars, heads, a.depth);
      bool fits = g.has_value();
      if (g)
        for (const auto& [n, t] : g->bindings()) fits = fits && head_depth(t) <= a.depth;
      if (fits) report("ground instance " + to_string(*g) + " fits the budget but was not enumerated");
      else out << "note: no ground instance of the unifier fits depth " << a.depth << "\n";
    }
  } else if (!en.unifiers.empty()) {
    report("no unifier computed, but " + to_string(en.unifiers.front().substitution) +
           " has degree " + format_degree(en.unifiers.front().degree));
  }
  out << (problems ? "verdict: discrepancy\n" : "verdict: consistent\n");
  return problems ? kDiscrepancy : kSuccess;
}

/// Parses argv and dispatches; diagnostics go to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Higher-order pattern unification modulo similarity", "hopsu"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Unify the problem in FILE");
  solve_cmd->add_option("file", solve_args.file, "Problem file")->required();
  solve_cmd->add_option("--cut", solve_args.cut, "Override the file's cut value");
  solve_cmd->add_flag("--crisp", solve_args.crisp, "Identity relation and cut value 1");
  solve_cmd->add_flag("--trace", solve_args.trace, "Print the derivation");
  solve_cmd->add_flag("--json", solve_args.json, "Machine-readable output");
  solve_cmd->add_flag("--full-subst", solve_args.full_subst,
                      "Print bindings of intermediate variables too");
  solve_cmd->add_flag("--strict-relation", solve_args.strict,
                      "Reject a relation that is not min-transitive");
  solve_cmd->add_option("--tnorm", solve_args.tnorm, "T-norm (only 'min')");

  std::string degree_file;
  bool degree_strict = false;
  auto* degree_cmd = app.add_subcommand("degree", "Similarity degree of each unify statement");
  degree_cmd->add_option("file", degree_file, "Problem file")->required();
  degree_cmd->add_flag("--strict-relation", degree_strict);

  std::string check_file;
  bool check_strict = false;
  auto* check_cmd = app.add_subcommand("check", "Validate and close the similarity relation");
  check_cmd->add_option("file", check_file, "Problem file")->required();
  check_cmd->add_flag("--strict-relation", check_strict);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check the unifier against brute force");
  verify_cmd->add_option("file", verify_args.file, "Problem file")->required();
  verify_cmd->add_option("--depth", verify_args.depth, "Enumeration depth")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--budget", verify_args.budget, "Candidate substitutions to examine");
  verify_cmd->add_option("--cut", verify_args.cut, "Override the file's cut value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*solve_cmd) return solve(solve_args, out);
    if (*degree_cmd) return degree(degree_file, degree_strict, out);
    if (*check_cmd) return check(check_file, check_strict, out);
    if (*verify_cmd) return verify(verify_args, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace hopsu::cli
