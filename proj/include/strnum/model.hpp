#pragma once

#include <map>
#include <string>
#include <vector>

#include "strnum/ast.hpp"

namespace strnum {

struct UnboundVariableError : std::runtime_error {
  std::string name;
  explicit UnboundVariableError(const std::string& n)
      : std::runtime_error("unbound variable '" + n + "'"), name(n) {}
};

// Thrown when a formula mentions syntax that has no interpretation in the
// restricted model (epsilon, out-of-domain literals, concatenation).
struct UnsupportedInModelB : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Universe { CanonicalA, RestrictedB };

const char* universe_name(Universe u);

// Bounds for finite evaluation: strings up to max_str_len characters,
// naturals up to max_num inclusive.
struct ModelSpec {
  Universe universe = Universe::CanonicalA;
  std::size_t max_str_len = 6;
  Nat max_num = 64;
};

struct Value {
  std::variant<std::string, Nat> v;

  Sort sort() const { return std::holds_alternative<std::string>(v) ? Sort::Str : Sort::Num; }
  const std::string& str() const { return std::get<std::string>(v); }
  const Nat& num() const { return std::get<Nat>(v); }

  friend bool operator==(const Value& a, const Value& b) { return a.v == b.v; }
};

using Assignment = std::map<std::string, Value>;

// Renders a value in surface syntax ("011", epsilon, 42).
std::string show_value(const Value& v);

// ---------------------------------------------------------------------------
// Interpreted predicates
// ---------------------------------------------------------------------------

// Value of a binary string read most-significant-first (last character is
// the least significant bit). The empty string has value 0.
Nat str_value(const std::string& s);

// Shortest binary representation of i ("0" for zero).
std::string minimal_rep(const Nat& i);

// Binary digits of value, most significant bit first, zero-padded to width.
std::string padded_binary(unsigned long long value, std::size_t width);

// numstr(i, s): s is nonempty and str_value(s) == i. No representation of
// anything exists for the empty string.
bool numstr_holds(const Nat& i, const std::string& s);

// pi(p, x, y): p = x * 2^y.
bool pi_holds(const Nat& p, const Nat& x, const Nat& y);

// Membership in the restricted universe: nonempty, and no leading zero
// except the string "0" itself.
bool in_b_domain(const std::string& s);

// ---------------------------------------------------------------------------
// Term evaluation (total on the assignment; throws UnboundVariableError for
// missing variables, SortError for mismatched bindings)
// ---------------------------------------------------------------------------

std::string eval_str_term(const StrTermPtr& t, const Assignment& a);
Nat eval_num_term(const NumTermPtr& t, const Assignment& a);

// ---------------------------------------------------------------------------
// Bounded domains
// ---------------------------------------------------------------------------

// Random-access view of a sort's finite domain under a ModelSpec. Order is
// canonical: numbers ascending; strings by length, then lexicographically.
class Domain {
 public:
  Domain(Sort sort, const ModelSpec& m);

  // Saturates at 2^64-1 for astronomically large domains.
  unsigned long long size() const { return size_; }
  bool empty() const { return size_ == 0; }
  Value at(unsigned long long idx) const;

 private:
  Sort sort_;
  Universe universe_;
  std::size_t max_len_;
  Nat max_num_;
  unsigned long long size_;
};

// Materialized domain in canonical order; throws std::length_error if the
// domain is too large to hold in memory.
std::vector<Value> enumerate_domain(Sort sort, const ModelSpec& m);

// Rejects formulas that mention syntax with no interpretation in the model
// (only restrictive for RestrictedB). No-op for CanonicalA.
void validate_for_model(const FormulaPtr& f, const ModelSpec& m);

}  // namespace strnum
