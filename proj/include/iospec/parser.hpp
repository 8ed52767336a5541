#pragma once

// Concrete syntax for specifications (.iospec files):
//
//   spec      := statement*
//   statement := "read" IDENT ":" domain
//              | "write" "{" outputs "}"
//              | "if" term "then" "{" spec "}" "else" "{" spec "}"
//              | "loop" "{" spec "}"
//              | "exit"
//              | "skip"
//   domain    := "ints" | "nats" | "{" INT ("," INT)* "}"
//   outputs   := ("eps" | term) ("," ("eps" | term))*
//   term      := INT | IDENT "_C" | IDENT "_A" | IDENT "(" term ("," term)* ")"
//              | term binop term | "not" term | "-" term | "(" term ")"
//
// Precedence, loosest first: ||, &&, comparisons (non-associative), + and -,
// *, then the prefix operators. `#` starts a line comment.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iospec/ast.hpp"

namespace iospec {

struct SourceSpan {
  int startLine = 1;
  int startColumn = 1;
  int endLine = 1;
  int endColumn = 1;
};

struct ParseError : std::runtime_error {
  ParseError(SourceSpan span, std::string message, std::vector<std::string> expected);

  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;
};

// The text parsed but the specification is not well formed.
struct StaticError : std::runtime_error {
  explicit StaticError(std::vector<Violation> violations);

  std::vector<Violation> violations;
};

// Parses, normalizes and checks. Throws ParseError or StaticError.
Specification parseSpec(std::string_view text, const FunctionRegistry& registry = FunctionRegistry::builtins());

// Parses and normalizes without the well-formedness check.
Specification parseSpecUnchecked(std::string_view text);

Term parseTerm(std::string_view text);

// Deterministic text that parses back to the same tree.
std::string renderSpec(const Specification& spec);
std::string renderTerm(const Term& term);

}  // namespace iospec
