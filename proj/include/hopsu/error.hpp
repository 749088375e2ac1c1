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

#include <stdexcept>
#include <string>
#include <string_view>

namespace hopsu {

enum class ErrorKind {
  Syntax,
  UndeclaredSymbol,
  DuplicateDeclaration,
  UnboundIdentifier,
  TypeMismatch,
  TypeConflict,
  DegreeOutOfRange,
  NotTransitive,
  NonPattern,
  UnsupportedTNorm,
  BudgetTooSmall,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
    case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorKind::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::TypeConflict: return "TypeConflict";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NonPattern: return "NonPattern";
    case ErrorKind::UnsupportedTNorm: return "UnsupportedTNorm";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
  }
  return "Error";
}

/// Any problem with user input or with arguments handed to the library.
/// Unification failure is not an error; see `Answer`.
class InputError : public std::runtime_error {
 public:
  InputError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hopsu
