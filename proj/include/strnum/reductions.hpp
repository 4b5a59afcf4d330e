#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "strnum/ast.hpp"
#include "strnum/ast_ops.hpp"
#include "strnum/model.hpp"

namespace strnum {

// A reduction was applied to a formula outside its source fragment.
struct WrongTheoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A negated pi atom reached the positive-occurrence rewriter with
// elimination disabled.
struct NegativePiAtomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One atom-level rewrite applied during a reduction.
struct Rewrite {
  FormulaPtr atom;                 // the subformula that was replaced
  std::vector<std::string> fresh;  // variables introduced by this rewrite
  FormulaPtr replacement;          // what took its place
  std::string note;                // rule name and side conditions
};

// Rewrites are listed in application order; undoing them last-to-first
// (replacing each `replacement` by its `atom`) recovers the normalized
// source. Every fresh variable of the target appears in exactly one entry.
struct ReductionTrace {
  FormulaPtr source;
  FormulaPtr target;
  std::vector<Rewrite> rewrites;
};

// Replaces every negated pi occurrence using functionality of pi:
//   (not (pi p x y))  ~>  (exists ((q Num)) (and (pi q x y) (not (= q p)))).
// Intended for quantifier-free power-arithmetic formulas in negation normal
// form; formulas with no negated pi atom are returned unchanged (same
// pointer).
FormulaPtr eliminate_negative_pi(const FormulaPtr& f);

// Power arithmetic to the string theory. Numerals, numeric variables,
// addition, equality and order pass through unchanged; every positive pi
// atom is replaced by its string encoding
//   (exists ((z Str) (xs Str))
//     (and (= (concat "0" z) (concat z "0")) (= (len z) y)
//          (numstr p (concat xs z)) (numstr x xs))).
// The input must be a well-sorted, quantifier-free power-arithmetic formula;
// it is first normalized to negation normal form, and negated pi atoms are
// eliminated (unless eliminate_negatives is false, in which case any negated
// pi atom raises NegativePiAtomError).
ReductionTrace reduce_tp_to_tsn(const FormulaPtr& f, bool eliminate_negatives = true);

// String theory to the hybrid theory. Every numstr(i, s) atom is replaced by
// the equivalent pi formulation: the universal non-existence of an overflow
// witness or a bit-discrepancy witness, conjoined with the nonemptiness side
// condition (exists ((c Num)) (= (len s) (+ c 1))). The replacement is a
// logical equivalence, so atoms are rewritten in place under any quantifier
// prefix and any polarity.
ReductionTrace reduce_tsn_to_tpi(const FormulaPtr& f);

// Bounds that make bounded evaluation of the numstr-via-pi encoding exact
// for one instance numstr(i, s) with len(s) = s_len: every quantified
// numeric value that can witness an error is at most max(2^(s_len+1), i+1, 2)
// and every quantified string fits within s_len characters.
ModelSpec sound_bounds_for_numstr_check(const Nat& i, std::size_t s_len);

}  // namespace strnum
