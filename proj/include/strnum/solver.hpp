#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strnum/eval.hpp"
#include "strnum/model.hpp"

namespace strnum {

enum class SolveStatus { Sat, UnsatWithinBounds };

struct SolveResult {
  SolveStatus status = SolveStatus::UnsatWithinBounds;
  // Lexicographically first witness in the canonical enumeration order
  // (free variables sorted by name, first variable varying slowest).
  Assignment witness;
  // Sat: 1-based index of the witness in the enumeration (how many
  // assignments a sequential search inspects). Unsat: the full product of
  // the domain sizes. Saturates at 2^64-1.
  unsigned long long assignments_tried = 0;
  ModelSpec bounds;
};

// Brute-force satisfiability within bounds. Enumerates every assignment of
// the free variables over the bounded domains and evaluates the formula
// (bound variables are handled by the evaluator). The result is independent
// of `jobs`: parallel workers race over slices of the space but the reported
// witness is always the enumeration-first one.
SolveResult solve(const FormulaPtr& f, const ModelSpec& m, unsigned jobs = 1);

// Differential satisfiability check for a reduction: solves both formulas at
// the same bounds and compares verdicts. Bounded search is sound but not
// complete, so a mismatch is only "inconclusive" unless `certified` is set
// by a caller that knows the bounds cover the reduction's witnesses.
enum class EquisatVerdict { Agree, Inconclusive, Disagree };

struct EquisatReport {
  EquisatVerdict verdict = EquisatVerdict::Agree;
  SolveResult source;
  SolveResult target;
  std::string note;
};

EquisatReport check_equisat(const FormulaPtr& source, const FormulaPtr& target,
                            const ModelSpec& m, bool certified = false, unsigned jobs = 1);

// Exposed for tests: solve with an explicit variable order (names must be
// exactly the free variables of f).
SolveResult solve_with_order(const FormulaPtr& f, const ModelSpec& m,
                             const std::vector<std::string>& order, unsigned jobs = 1);

}  // namespace strnum
