#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "strnum/ast.hpp"
#include "strnum/eval.hpp"
#include "strnum/model.hpp"
#include "strnum/syntax.hpp"

namespace strnum {

enum class AxiomGroup { Arithmetic, Equality, Concatenation, Length, Numstr };

const char* axiom_group_name(AxiomGroup g);

struct Axiom {
  std::string id;      // stable public identifier, e.g. "ARITH-01", "NUMSTR-24"
  AxiomGroup group;
  FormulaPtr statement;  // a closed, well-sorted formula
  std::string note;      // one-line gloss
};

// The axiom system: arithmetic over the naturals, equality (including the
// explicit reflexive/symmetric/transitive axioms per sort), concatenation,
// length, and the numstr conversion predicate. Built once; order is stable.
const std::vector<Axiom>& gamma();

// Parses a file of forms `(axiom ID <formula>)` into axioms; the group is
// inferred from the ID prefix. Used by the mutation-testing hook.
std::variant<std::vector<Axiom>, ParseError> parse_axioms_file(std::string_view text);

enum class CheckKind { HoldsWithinBounds, Counterexample, WitnessFound, NotFullyCheckable };

const char* check_kind_name(CheckKind k);

struct AxiomCheckOutcome {
  std::string axiom_id;
  CheckKind kind = CheckKind::HoldsWithinBounds;
  // Counterexample: a leading-universal tuple falsifying the rest;
  // WitnessFound: a leading-existential tuple verifying the rest.
  Assignment assignment;
  std::string reason;  // set for NotFullyCheckable and no-witness outcomes
  ModelSpec bounds;
};

// Evaluation options used for axiom checking: existential string witnesses
// whose length is pinned by a numeric equation may exceed max_str_len up to
// max(max_str_len, min(max_num, 64)), since several axioms quantify string
// lengths against the numeric domain.
EvalOptions gamma_eval_options(const ModelSpec& m);

// Checks one axiom against the canonical model at the given bounds. The
// leading quantifier block is searched explicitly (universal: for a
// counterexample; existential: for a witness); the remainder is evaluated by
// the bounded evaluator. NUMSTR-24 is special-cased: digit juxtaposition in
// its usual display is meta-notation rather than a formula, so the statement
// here is its arithmetic reading and the outcome is NotFullyCheckable with
// the reading's verdict in the reason.
// Throws UnsupportedInModelB for the restricted model.
AxiomCheckOutcome check_axiom(const Axiom& ax, const ModelSpec& m);

// Checks every axiom in order.
std::vector<AxiomCheckOutcome> check_axioms(const std::vector<Axiom>& axioms, const ModelSpec& m);

// The sentence asserting that numstr is a bijection between the naturals and
// the strings: every number has exactly one representation and every string
// represents exactly one number.
FormulaPtr sentence_j();

// Raised when the requested bounds cannot exhibit the demonstration.
struct BoundsTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of evaluating sentence J in the canonical and restricted models at
// harmonized bounds (see incompleteness_demo).
struct IncompletenessReport {
  ModelSpec requested;        // bounds as passed in (universe ignored)
  std::size_t effective_len = 0;  // harmonized string length L
  Nat effective_max;              // harmonized numeric bound 2^L - 1
  std::string sentence;           // J in surface syntax
  bool holds_in_a = false;
  bool holds_in_b = false;
  Nat duplicate_value;            // 3
  std::string rep_short;          // "11"
  std::string rep_long;           // "0011"
  bool pair_verified = false;     // both representations check out directly
  std::size_t a_representation_count = 0;  // representations of 3 in A within bounds
  bool b_bijection_verified = false;  // every value <= effective_max has exactly
                                      // one representation in B within bounds
  bool split_observed = false;        // false in A and true in B
  std::string note;
};

// Evaluates J in both models. Bounds are harmonized first so that the
// restricted model is a bijection on the evaluated ranges: with
// L = min(max_str_len, floor(log2(max_num + 1))), strings are capped at L
// and numbers at 2^L - 1 in both models. Throws BoundsTooSmallError when
// L < 4 (the duplicate pair needs four characters).
IncompletenessReport incompleteness_demo(const ModelSpec& bounds);

}  // namespace strnum
