#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace strnum {

// Arbitrary-precision natural number. All numeric values in the toolkit are
// naturals; builders reject negative values.
using Nat = boost::multiprecision::cpp_int;

enum class Sort { Str, Num };

const char* sort_name(Sort s);

// ---------------------------------------------------------------------------
// String terms: literals over {0,1}, variables, and n-ary concatenation.
// Concatenations are flattened on construction, so no Concat node has a
// Concat child and every Concat has at least two parts.
// ---------------------------------------------------------------------------

struct StrTerm;
using StrTermPtr = std::shared_ptr<const StrTerm>;

struct StrLit {
  std::string value;  // characters '0' and '1' only; "" is the empty string
};

struct StrVar {
  std::string name;
};

struct Concat {
  std::vector<StrTermPtr> parts;  // size >= 2, no part is a Concat
};

struct StrTerm {
  std::variant<StrLit, StrVar, Concat> node;
};

// ---------------------------------------------------------------------------
// Numeric terms: naturals, variables, string length, n-ary addition, and
// multiplication by a constant (shorthand for repeated addition).
// ---------------------------------------------------------------------------

struct NumTerm;
using NumTermPtr = std::shared_ptr<const NumTerm>;

struct NumLit {
  Nat value;  // >= 0
};

struct NumVar {
  std::string name;
};

struct Len {
  StrTermPtr arg;
};

struct Add {
  std::vector<NumTermPtr> parts;  // size >= 2, no part is an Add
};

struct MulConst {
  Nat factor;  // >= 0
  NumTermPtr arg;
};

struct NumTerm {
  std::variant<NumLit, NumVar, Len, Add, MulConst> node;
};

// ---------------------------------------------------------------------------
// Atoms. Well-sortedness of argument positions is enforced by the types.
// ---------------------------------------------------------------------------

struct StrEq {
  StrTermPtr lhs, rhs;
};

struct NumEq {
  NumTermPtr lhs, rhs;
};

struct NumLt {
  NumTermPtr lhs, rhs;
};

// numstr(n, s): s is a binary representation of n, last character least
// significant.
struct NumStr {
  NumTermPtr num;
  StrTermPtr str;
};

// pi(p, x, y): p = x * 2^y over the naturals.
struct PiAtom {
  NumTermPtr pow, base, exp;
};

struct Atom {
  std::variant<StrEq, NumEq, NumLt, NumStr, PiAtom> node;
};

// ---------------------------------------------------------------------------
// Formulas.
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct AtomF {
  Atom atom;
};

struct And {
  std::vector<FormulaPtr> parts;  // size >= 2
};

struct Or {
  std::vector<FormulaPtr> parts;  // size >= 2
};

struct Not {
  FormulaPtr body;
};

enum class Quant { Exists, Forall };

struct Quantified {
  Quant kind;
  std::string var;
  Sort sort;
  FormulaPtr body;
};

struct Formula {
  std::variant<AtomF, And, Or, Not, Quantified> node;
};

// A term of either sort, used where an operation is sort-generic
// (substitution, assignments).
using Term = std::variant<StrTermPtr, NumTermPtr>;

// ---------------------------------------------------------------------------
// Builders. These are the only way the rest of the code constructs terms;
// they enforce the construction invariants (charset, flattening, arities).
// ---------------------------------------------------------------------------

struct ConstructionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

StrTermPtr lit(std::string value);
StrTermPtr epsilon();
StrTermPtr svar(std::string name);
StrTermPtr concat(std::vector<StrTermPtr> parts);

NumTermPtr nlit(Nat value);
NumTermPtr nvar(std::string name);
NumTermPtr len(StrTermPtr arg);
NumTermPtr add(std::vector<NumTermPtr> parts);
NumTermPtr mul(Nat factor, NumTermPtr arg);

Atom str_eq(StrTermPtr lhs, StrTermPtr rhs);
Atom num_eq(NumTermPtr lhs, NumTermPtr rhs);
Atom num_lt(NumTermPtr lhs, NumTermPtr rhs);
Atom numstr(NumTermPtr n, StrTermPtr s);
Atom pi(NumTermPtr p, NumTermPtr x, NumTermPtr y);

FormulaPtr mk_atom(Atom a);
FormulaPtr mk_and(std::vector<FormulaPtr> parts);  // singleton collapses
FormulaPtr mk_or(std::vector<FormulaPtr> parts);   // singleton collapses
FormulaPtr mk_not(FormulaPtr body);
FormulaPtr mk_exists(std::string var, Sort sort, FormulaPtr body);
FormulaPtr mk_forall(std::string var, Sort sort, FormulaPtr body);
FormulaPtr mk_quant(Quant kind, std::string var, Sort sort, FormulaPtr body);

// Implication and biconditional are not formula constructors; they expand
// into the core connectives.
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);

// ---------------------------------------------------------------------------
// Structural equality (bound-variable names matter; see alpha_equal in
// ast_ops.hpp for equality up to renaming).
// ---------------------------------------------------------------------------

bool equal(const StrTermPtr& a, const StrTermPtr& b);
bool equal(const NumTermPtr& a, const NumTermPtr& b);
bool equal(const Atom& a, const Atom& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace strnum
