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

// Problem files (.hopsu):
//
//   type i.
//   const f : i -> i -> i.
//   var F : i -> i.
//   sim f g 0.8.
//   cut 0.4.
//   unify \x:i. f (F x) x =?= \x:i. g (a x) x.
//
// Statements may appear in any order; names are resolved after the whole
// file is read. `#` starts a comment that runs to the end of the line.

#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hopsu/error.hpp"
#include "hopsu/kernel.hpp"
#include "hopsu/print.hpp"
#include "hopsu/similarity.hpp"
#include "hopsu/term.hpp"
#include "hopsu/type.hpp"

namespace hopsu {

struct SourcePos {
  int line = 1;
  int col = 1;
};

struct ProblemFile {
  std::vector<std::string> types;
  std::vector<std::pair<std::string, Type>> constants;
  std::vector<std::pair<std::string, Type>> variables;
  std::vector<SimilarityPair> similarities;
  std::optional<Degree> cut;
  std::vector<std::pair<Term, Term>> equations;  // canonical, closed

  Signature signature() const {
    Signature sig;
    sig.base_types.insert(types.begin(), types.end());
    for (const auto& [n, t] : constants) sig.constants.emplace(n, t);
    for (const auto& [n, t] : variables) sig.variables.emplace(n, t);
    return sig;
  }

  SimilarityRelation relation(bool strict = false,
                              std::vector<ClosureChange>* changes = nullptr) const {
    return build_relation(signature(), similarities, strict, changes);
  }

  friend bool operator==(const ProblemFile& a, const ProblemFile& b) {
    if (a.types != b.types || a.constants != b.constants || a.variables != b.variables ||
        a.cut != b.cut || a.similarities.size() != b.similarities.size() ||
        a.equations != b.equations)
      return false;
    for (std::size_t i = 0; i < a.similarities.size(); ++i) {
      const auto& x = a.similarities[i];
      const auto& y = b.similarities[i];
      if (x.left != y.left || x.right != y.right || x.degree != y.degree) return false;
    }
    return true;
  }
};

struct ParseOptions {
  /// Reject unify sides that are not higher-order patterns.
  bool require_patterns = true;
  /// Reject files without a unify statement.
  bool require_unify = true;
};

namespace detail {

enum class Tok { Ident, Number, Dot, Colon, Arrow, Lambda, LParen, RParen, Unify, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

inline std::string describe(const Token& t) {
  return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
}

inline InputError error_at(ErrorKind kind, SourcePos p, const std::string& msg) {
  return InputError(kind, std::to_string(p.line) + ":" + std::to_string(p.col) + ": " + msg);
}

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else {
        ++pos.col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos start = pos;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (src.substr(i, 3) == "=?=") {
      out.push_back({Tok::Unify, "=?=", start});
      advance(3);
      continue;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", start});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '.': k = Tok::Dot; break;
      case ':': k = Tok::Colon; break;
      case '\\': k = Tok::Lambda; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw error_at(ErrorKind::Syntax, start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), start});
    advance(1);
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

// Syntax trees before name resolution.
struct RawType {
  std::string name;  // empty for arrows
  SourcePos pos;
  std::shared_ptr<RawType> arg, result;
};
using RawTypePtr = std::shared_ptr<RawType>;

struct RawTerm {
  enum Kind { Ident, Lambda, App } kind;
  std::string name;  // identifier or binder name
  SourcePos pos;
  RawTypePtr binder_type;
  std::shared_ptr<RawTerm> a, b;  // body / function, argument
};
using RawTermPtr = std::shared_ptr<RawTerm>;

inline const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"type", "const", "var", "sim", "cut", "unify"};
  return k;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[i_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }

  Token expect(Tok k, const char* what) {
    if (!at(k))
      throw error_at(ErrorKind::Syntax, peek().pos,
                     std::string("expected ") + what + ", found " + describe(peek()));
    return take();
  }

  Token name(const char* what) {
    Token t = expect(Tok::Ident, what);
    if (keywords().count(t.text))
      throw error_at(ErrorKind::Syntax, t.pos, "keyword '" + t.text + "' used as a name");
    return t;
  }

  RawTypePtr type() {
    RawTypePtr left;
    if (at(Tok::LParen)) {
      take();
      left = type();
      expect(Tok::RParen, "')'");
    } else {
      Token t = name("a type");
      left = std::make_shared<RawType>(RawType{t.text, t.pos, nullptr, nullptr});
    }
    if (at(Tok::Arrow)) {
      SourcePos p = take().pos;
      RawTypePtr right = type();
      return std::make_shared<RawType>(RawType{"", p, left, right});
    }
    return left;
  }

  RawTermPtr term() {
    if (at(Tok::Lambda)) {
      SourcePos p = take().pos;
      Token x = name("a bound variable");
      expect(Tok::Colon, "':'");
      RawTypePtr ty = type();
      expect(Tok::Dot, "'.'");
      RawTermPtr body = term();
      return std::make_shared<RawTerm>(RawTerm{RawTerm::Lambda, x.text, p, ty, body, nullptr});
    }
    RawTermPtr t = atom();
    if (!t) throw error_at(ErrorKind::Syntax, peek().pos, "expected a term, found " + describe(peek()));
    while (RawTermPtr a = atom())
      t = std::make_shared<RawTerm>(RawTerm{RawTerm::App, "", t->pos, nullptr, t, a});
    // A trailing abstraction is the last argument: f x \y:i. y
    if (at(Tok::Lambda)) {
      RawTermPtr a = term();
      t = std::make_shared<RawTerm>(RawTerm{RawTerm::App, "", t->pos, nullptr, t, a});
    }
    return t;
  }

  RawTermPtr atom() {
    if (at(Tok::Ident)) {
      if (keywords().count(peek().text)) return nullptr;
      Token t = take();
      return std::make_shared<RawTerm>(RawTerm{RawTerm::Ident, t.text, t.pos, nullptr, nullptr, nullptr});
    }
    if (at(Tok::LParen)) {
      take();
      RawTermPtr t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    return nullptr;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

inline Degree parse_degree(const Token& t) {
  Degree d = 0.0;
  auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
  if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size())
    throw error_at(ErrorKind::Syntax, t.pos, "malformed degree '" + t.text + "'");
  return d;
}

inline bool is_upper(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}
inline bool is_lower(const std::string& s) {
  return !s.empty() && std::islower(static_cast<unsigned char>(s[0]));
}

class Resolver {
 public:
  explicit Resolver(const Signature& sig) : sig_(sig) {}

  Type type(const RawTypePtr& t) const {
    if (t->name.empty()) return Type::arrow(type(t->arg), type(t->result));
    if (!sig_.base_types.count(t->name))
      throw error_at(ErrorKind::UndeclaredSymbol, t->pos, "type '" + t->name + "'");
    return Type::base(t->name);
  }

  /// Builds and typechecks a term; `ctx` lists enclosing binders, outermost first.
  Term term(const RawTermPtr& t, std::vector<Binder>& ctx) const {
    switch (t->kind) {
      case RawTerm::Ident: {
        for (std::size_t k = ctx.size(); k-- > 0;)
          if (ctx[k].name == t->name)
            return Term::bound(static_cast<std::uint32_t>(ctx.size() - 1 - k), ctx[k].type, t->name);
        if (auto it = sig_.constants.find(t->name); it != sig_.constants.end())
          return Term::constant(t->name, it->second);
        if (auto it = sig_.variables.find(t->name); it != sig_.variables.end())
          return Term::free(t->name, it->second);
        if (is_upper(t->name))
          throw error_at(ErrorKind::UndeclaredSymbol, t->pos, "variable '" + t->name + "'");
        throw error_at(ErrorKind::UnboundIdentifier, t->pos, "'" + t->name + "'");
      }
      case RawTerm::Lambda: {
        if (!is_lower(t->name))
          throw error_at(ErrorKind::Syntax, t->pos,
                         "bound variable '" + t->name + "' must start with a lower-case letter");
        Type bt = type(t->binder_type);
        ctx.push_back({t->name, bt});
        Term body = term(t->a, ctx);
        ctx.pop_back();
        return Term::abs(t->name, bt, body);
      }
      case RawTerm::App: {
        Term f = term(t->a, ctx);
        Term a = term(t->b, ctx);
        Type ft = type_of(f);
        Type at = type_of(a);
        if (!ft.is_arrow())
          throw error_at(ErrorKind::TypeMismatch, t->b->pos,
                         "'" + to_string(f, names(ctx)) + "' of type " + ft.str() +
                             " cannot be applied");
        if (!(ft.arg() == at))
          throw error_at(ErrorKind::TypeMismatch, t->b->pos,
                         "expected argument of type " + ft.arg().str() + ", found " +
                             to_string(a, names(ctx)) + " : " + at.str());
        return Term::app(f, a);
      }
    }
    return {};
  }

 private:
  static std::vector<std::string> names(const std::vector<Binder>& ctx) {
    std::vector<std::string> out;
    for (const auto& b : ctx) out.push_back(b.name);
    return out;
  }

  const Signature& sig_;
};

/// Source position of the `arg`-th argument (1-based) of the first
/// application spine headed by `var`, if the raw syntax has one.
inline std::optional<SourcePos> find_argument(const RawTermPtr& t, const std::string& var,
                                              std::size_t arg) {
  if (!t) return std::nullopt;
  if (t->kind == RawTerm::App) {
    std::vector<RawTermPtr> args;
    RawTermPtr h = t;
    while (h->kind == RawTerm::App) {
      args.insert(args.begin(), h->b);
      h = h->a;
    }
    if (h->kind == RawTerm::Ident && h->name == var && arg <= args.size())
      return args[arg - 1]->pos;
    if (auto p = find_argument(h, var, arg)) return p;
    for (const auto& a : args)
      if (auto p = find_argument(a, var, arg)) return p;
    return std::nullopt;
  }
  if (t->kind == RawTerm::Lambda) return find_argument(t->a, var, arg);
  return std::nullopt;
}

}  // namespace detail

/// Parses and checks a problem file. Throws InputError with a
/// `line:col:` prefix on the first problem found.
inline ProblemFile parse_problem(std::string_view text, const ParseOptions& options = {}) {
  using namespace detail;
  Parser p(lex(text));

  struct RawDecl {
    Token name;
    RawTypePtr type;
  };
  std::vector<Token> type_decls;
  std::vector<RawDecl> const_decls, var_decls;
  std::vector<std::pair<std::array<Token, 3>, SourcePos>> sims;
  std::optional<Token> cut;
  std::vector<std::pair<RawTermPtr, RawTermPtr>> unifies;

  while (!p.at(Tok::End)) {
    Token kw = p.expect(Tok::Ident, "a statement");
    if (kw.text == "type") {
      type_decls.push_back(p.name("a type name"));
    } else if (kw.text == "const") {
      Token n = p.name("a constant name");
      p.expect(Tok::Colon, "':'");
      const_decls.push_back({n, p.type()});
    } else if (kw.text == "var") {
      Token n = p.name("a variable name");
      if (!is_upper(n.text))
        throw error_at(ErrorKind::Syntax, n.pos,
                       "variable '" + n.text + "' must start with an upper-case letter");
      p.expect(Tok::Colon, "':'");
      var_decls.push_back({n, p.type()});
    } else if (kw.text == "sim") {
      Token l = p.name("a constant name");
      Token r = p.name("a constant name");
      Token d = p.expect(Tok::Number, "a degree");
      sims.push_back({{l, r, d}, kw.pos});
    } else if (kw.text == "cut") {
      Token d = p.expect(Tok::Number, "a degree");
      if (cut) throw error_at(ErrorKind::DuplicateDeclaration, kw.pos, "second cut statement");
      cut = d;
    } else if (kw.text == "unify") {
      RawTermPtr l = p.term();
      p.expect(Tok::Unify, "'=?='");
      RawTermPtr r = p.term();
      unifies.emplace_back(l, r);
    } else {
      throw error_at(ErrorKind::Syntax, kw.pos, "unknown statement '" + kw.text + "'");
    }
    p.expect(Tok::Dot, "'.' ending the statement");
  }
  if (options.require_unify && unifies.empty())
    throw error_at(ErrorKind::Syntax, p.peek().pos, "no unify statement");

  ProblemFile pf;
  Signature sig;
  for (const Token& t : type_decls) {
    if (!sig.base_types.insert(t.text).second)
      throw error_at(ErrorKind::DuplicateDeclaration, t.pos, "type '" + t.text + "'");
    pf.types.push_back(t.text);
  }
  Resolver types_only(sig);
  for (const auto& d : const_decls) {
    if (sig.declares(d.name.text))
      throw error_at(ErrorKind::DuplicateDeclaration, d.name.pos, "'" + d.name.text + "'");
    Type ty = types_only.type(d.type);
    sig.constants.emplace(d.name.text, ty);
    pf.constants.emplace_back(d.name.text, ty);
  }
  for (const auto& d : var_decls) {
    if (sig.declares(d.name.text))
      throw error_at(ErrorKind::DuplicateDeclaration, d.name.pos, "'" + d.name.text + "'");
    Type ty = types_only.type(d.type);
    sig.variables.emplace(d.name.text, ty);
    pf.variables.emplace_back(d.name.text, ty);
  }
  for (const auto& [s, pos] : sims) {
    for (int k = 0; k < 2; ++k)
      if (!sig.constants.count(s[k].text))
        throw error_at(ErrorKind::UndeclaredSymbol, s[k].pos, "constant '" + s[k].text + "'");
    Degree d = parse_degree(s[2]);
    if (d > 1.0)
      throw error_at(ErrorKind::DegreeOutOfRange, s[2].pos, "degree " + s[2].text + " exceeds 1");
    pf.similarities.push_back({s[0].text, s[1].text, d});
  }
  if (cut) {
    Degree d = parse_degree(*cut);
    if (!(d > 0.0 && d <= 1.0))
      throw error_at(ErrorKind::DegreeOutOfRange, cut->pos, "cut value must lie in (0, 1]");
    pf.cut = d;
  }

  Resolver res(sig);
  for (const auto& [l, r] : unifies) {
    std::vector<Binder> ctx;
    Term lt = normalize(res.term(l, ctx));
    Term rt = normalize(res.term(r, ctx));
    if (options.require_patterns) {
      for (auto [t, raw] : {std::pair{&lt, l}, std::pair{&rt, r}})
        if (auto v = pattern_violation(*t)) {
          SourcePos at = find_argument(raw, v->variable, v->argument).value_or(raw->pos);
          throw error_at(ErrorKind::NonPattern, at,
                         "argument " + std::to_string(v->argument) + " of " + v->variable +
                             ": " + v->reason);
        }
    }
    if (!(type_of(lt) == type_of(rt)))
      throw error_at(ErrorKind::TypeMismatch, l->pos,
                     "sides have different types: " + type_of(lt).str() + " and " +
                         type_of(rt).str());
    pf.equations.emplace_back(lt, rt);
  }
  // Relation-level checks (types of similar constants, reflexive degrees).
  build_relation(sig, pf.similarities);
  return pf;
}

/// Parses a single closed term against `sig` (e.g. a unifier binding).
inline Term parse_term(std::string_view text, const Signature& sig) {
  using namespace detail;
  Parser p(lex(text));
  RawTermPtr raw = p.term();
  if (!p.at(Tok::End))
    throw error_at(ErrorKind::Syntax, p.peek().pos, "unexpected " + describe(p.peek()));
  std::vector<Binder> ctx;
  return normalize(Resolver(sig).term(raw, ctx));
}

inline Type parse_type(std::string_view text, const Signature& sig) {
  using namespace detail;
  Parser p(lex(text));
  RawTypePtr raw = p.type();
  if (!p.at(Tok::End))
    throw error_at(ErrorKind::Syntax, p.peek().pos, "unexpected " + describe(p.peek()));
  return Resolver(sig).type(raw);
}

/// Renders a problem file in the input grammar; parse(print(p)) == p.
inline std::string print_problem(const ProblemFile& pf) {
  std::string out;
  for (const auto& t : pf.types) out += "type " + t + ".\n";
  for (const auto& [n, t] : pf.constants) out += "const " + n + " : " + t.str() + ".\n";
  for (const auto& [n, t] : pf.variables) out += "var " + n + " : " + t.str() + ".\n";
  for (const auto& s : pf.similarities)
    out += "sim " + s.left + " " + s.right + " " + format_degree(s.degree) + ".\n";
  if (pf.cut) out += "cut " + format_degree(*pf.cut) + ".\n";
  for (const auto& [l, r] : pf.equations)
    out += "unify " + to_string(l) + " =?= " + to_string(r) + ".\n";
  return out;
}

}  // namespace hopsu
