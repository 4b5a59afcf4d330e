#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "strnum/ast.hpp"

namespace strnum {

struct SourceSpan {
  std::size_t begin = 0, end = 0;  // byte offsets, half-open
  std::size_t line = 1, col = 1;   // 1-based position of begin
};

struct ParseError {
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;  // what would have been accepted here

  std::string render() const;  // "line L, col C: message (expected ...)"
};

// Low-level s-expression reader. Strings are binary-only; numerals are
// arbitrary-precision naturals.
struct SExp {
  enum class Kind { Symbol, Numeral, String, List };
  Kind kind = Kind::List;
  std::string text;        // Symbol name or String contents
  Nat value;               // Numeral value
  std::vector<SExp> items; // List members
  SourceSpan span;
};

std::variant<std::vector<SExp>, ParseError> read_sexprs(std::string_view text);

// Builds a formula from one s-expression. Variable sorts come from binders
// or are inferred from the first determining use; a bare `(= x y)` with both
// sides unknown defaults both variables to Str.
std::variant<FormulaPtr, ParseError> build_formula(const SExp& sexp);

struct ParseResult {
  FormulaPtr formula;  // null on error
  std::optional<ParseError> error;
  explicit operator bool() const { return formula != nullptr; }
};

// Parses exactly one formula (trailing garbage is an error).
ParseResult parse(std::string_view text);

// Deterministic printer; parse(print(f)) is alpha-equal (in fact structurally
// equal) to f. Adjacent quantifiers of the same kind print as one binder
// list; the empty string literal prints as `epsilon`.
std::string print(const FormulaPtr& f);
std::string print(const StrTermPtr& t);
std::string print(const NumTermPtr& t);
std::string print(const Atom& a);

}  // namespace strnum
