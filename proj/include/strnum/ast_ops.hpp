#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "strnum/ast.hpp"

namespace strnum {

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by theory_of when a formula mixes numstr and pi.
struct MixedTheoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TheoryTag { Tsn, Tp, Tpi };

const char* theory_name(TheoryTag t);

// True iff every variable occurrence is consistent: bound occurrences match
// the sort of the innermost binder of that name, and all free occurrences of
// a name agree on one sort.
bool well_sorted(const FormulaPtr& f);

// Free variables with their sorts, ordered by name. Requires well_sorted.
std::map<std::string, Sort> free_vars(const FormulaPtr& f);

bool is_free_in(const FormulaPtr& f, const std::string& name);

// Every variable name mentioned anywhere (free or bound).
std::set<std::string> all_names(const FormulaPtr& f);

// Capture-avoiding substitution of a term for every free occurrence of var.
// Throws SortError if the term's sort does not match the occurrences.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& replacement);

// Equality up to consistent renaming of bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// Renames bound variables so they are pairwise distinct and distinct from
// every free variable.
FormulaPtr alpha_normalize(const FormulaPtr& f);

// Negation normal form: negations pushed down to atoms.
FormulaPtr to_nnf(const FormulaPtr& f);

// Prenex normal form: returns a formula consisting of a quantifier prefix
// followed by a quantifier-free matrix. Quantifiers are hoisted in
// left-to-right child order, preserving per-child nesting; bound variables
// are renamed apart first.
FormulaPtr to_prenex(const FormulaPtr& f);

// Classifies a formula by the most specific theory it fits:
//   Tp  - numeric sort only, atoms among =, <, pi, no len;
//   Tpi - uses pi (and anything string-sorted) but no numstr;
//   Tsn - everything else without pi.
// Throws MixedTheoryError if both pi and numstr occur.
TheoryTag theory_of(const FormulaPtr& f);

// Language-fit predicates used as reduction preconditions.
bool fits_tp(const FormulaPtr& f);   // no string sort, no len, no numstr
bool fits_tsn(const FormulaPtr& f);  // no pi
bool fits_tpi(const FormulaPtr& f);  // no numstr

bool is_quantifier_free(const FormulaPtr& f);

// Rewrites every MulConst k*t into a k-fold sum (0*t becomes the literal 0).
NumTermPtr expand_mulconst(const NumTermPtr& t);
FormulaPtr expand_mulconst(const FormulaPtr& f);

// Fresh-name allocator. Fresh names have the shape base!k; the allocator is
// seeded with every name already in use so fresh names never collide.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(const std::set<std::string>& in_use);
  void reserve(const std::string& name);
  void reserve_all(const FormulaPtr& f);
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
  std::map<std::string, unsigned long long> next_;
};

}  // namespace strnum
