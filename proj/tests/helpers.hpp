#pragma once

// Shared test utilities: a deliberately naive reference evaluator used as a
// differential oracle, plus small conveniences for building inputs.

#include <optional>
#include <stdexcept>
#include <string>

#include "strnum/ast_ops.hpp"
#include "strnum/model.hpp"
#include "strnum/syntax.hpp"

namespace strnum::testing {

inline FormulaPtr parsed(const std::string& text) {
  ParseResult r = parse(text);
  if (!r) throw std::runtime_error("test formula does not parse: " + r.error->render());
  return r.formula;
}

// Reference semantics by direct domain enumeration: no candidate narrowing,
// no block handling — one variable at a time, every value tried. Slow and
// obviously correct; the production evaluator is checked against it.
bool naive_eval(const FormulaPtr& f, Assignment& a, const ModelSpec& m);

inline bool naive_eval(const FormulaPtr& f, const ModelSpec& m) {
  Assignment a;
  return naive_eval(f, a, m);
}

// Replaces the first subformula structurally equal to `needle` with `by`.
// Returns nullptr when the needle does not occur.
FormulaPtr replace_first(const FormulaPtr& f, const FormulaPtr& needle, const FormulaPtr& by);

}  // namespace strnum::testing
