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

#include <charconv>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hopsu/term.hpp"

namespace hopsu {

/// Shortest plain decimal (no exponent) that round-trips to the same double.
inline std::string format_degree(double d) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

namespace detail {

inline void collect_symbol_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Free:
    case TermKind::Const:
      out.insert(t.name());
      break;
    case TermKind::Abs:
      collect_symbol_names(t.body(), out);
      break;
    case TermKind::App:
      collect_symbol_names(t.fn(), out);
      collect_symbol_names(t.arg(), out);
      break;
    default:
      break;
  }
}

class Printer {
 public:
  Printer(const std::set<std::string>& symbols, std::vector<std::string> scope)
      : symbols_(symbols), scope_(std::move(scope)) {}

  // prec: 0 = top (abstraction allowed), 1 = function position, 2 = argument.
  void print(const Term& t, int prec, std::string& out) {
    switch (t.kind()) {
      case TermKind::Free:
      case TermKind::Const:
        out += t.name();
        break;
      case TermKind::Bound:
        if (t.index() < scope_.size())
          out += scope_[scope_.size() - 1 - t.index()];
        else
          out += "?" + std::to_string(t.index() - scope_.size());
        break;
      case TermKind::Abs: {
        if (prec > 0) out += '(';
        std::string name = choose(t.name());
        out += '\\';
        out += name;
        out += ':';
        out += t.type().str();
        out += ". ";
        scope_.push_back(name);
        print(t.body(), 0, out);
        scope_.pop_back();
        if (prec > 0) out += ')';
        break;
      }
      case TermKind::App: {
        if (prec > 1) out += '(';
        print(t.fn(), 1, out);
        out += ' ';
        print(t.arg(), 2, out);
        if (prec > 1) out += ')';
        break;
      }
    }
  }

 private:
  bool taken(const std::string& n) const {
    if (symbols_.count(n)) return true;
    for (const auto& s : scope_)
      if (s == n) return true;
    return false;
  }

  std::string choose(const std::string& hint) const {
    std::string base = hint.empty() || !(hint[0] >= 'a' && hint[0] <= 'z') ? "x" : hint;
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!taken(cand)) return cand;
    }
  }

  const std::set<std::string>& symbols_;
  std::vector<std::string> scope_;
};

}  // namespace detail

/// Renders a term in the problem-file syntax, e.g. `\x:i. f (F x) x`.
/// `context` names the loose bound variables, outermost first.
inline std::string to_string(const Term& t, std::span<const std::string> context = {}) {
  std::set<std::string> symbols;
  detail::collect_symbol_names(t, symbols);
  detail::Printer p(symbols, std::vector<std::string>(context.begin(), context.end()));
  std::string out;
  p.print(t, 0, out);
  return out;
}

inline std::vector<std::string> context_names(std::span<const Binder> ctx) {
  std::vector<std::string> names;
  names.reserve(ctx.size());
  std::set<std::string> seen;
  for (const auto& b : ctx) {
    std::string n = b.name.empty() ? "x" : b.name;
    for (int i = 1; seen.count(n); ++i) n = b.name + std::to_string(i);
    seen.insert(n);
    names.push_back(n);
  }
  return names;
}

}  // namespace hopsu
