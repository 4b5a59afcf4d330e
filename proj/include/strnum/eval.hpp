#pragma once

#include <unordered_map>
#include <vector>

#include "strnum/ast_ops.hpp"
#include "strnum/model.hpp"

namespace strnum {

struct EvalOptions {
  // Guided existential string witnesses are admitted up to
  // max(spec.max_str_len, guided_str_len_cap) characters. The default (0)
  // keeps every quantifier strictly inside the declared bounds; the axiom
  // checker raises it so witnesses whose length is pinned by a numeric
  // equation are not cut off by the string bound. Unguided enumeration
  // always stays strict.
  std::size_t guided_str_len_cap = 0;
};

// Bounded Tarskian evaluation: quantifiers range over the finite domains of
// a ModelSpec. The result is "truth within bounds", nothing stronger.
//
// Quantifier blocks are expanded with three exact, semantics-preserving
// devices: existential blocks distribute over disjunctions, variables absent
// from the body are discharged by a nonempty-domain check, and equational
// conjuncts narrow the candidate set for a variable (the full body is still
// evaluated for every candidate, so narrowing can never add solutions, and
// each pattern provably covers all solutions of its conjunct).
//
// An Evaluator instance caches per-node data; it assumes the formulas passed
// to eval() stay alive for its own lifetime (it retains them).
class Evaluator {
 public:
  explicit Evaluator(ModelSpec m, EvalOptions opts = {});

  // Requires f to be well-sorted and, for RestrictedB, expressible in the
  // model (validate_for_model). Throws UnboundVariableError if a free
  // variable of f has no binding in a.
  bool eval(const FormulaPtr& f, const Assignment& a);

  const ModelSpec& spec() const { return spec_; }

 private:
  struct QV {
    std::string name;
    Sort sort;
  };

  struct Conjunct {
    const Formula* formula;
    std::vector<std::string> shadowed;  // binder names crossed on the way in
  };

  struct Guide {
    enum class Mode { Values, FullDomain, Length, Reps, CharRepeat, Prefixes };
    Mode mode = Mode::FullDomain;
    std::vector<Value> values;
    std::size_t length = 0;   // Length: all strings of exactly this length
    Nat rep_of;               // Reps: all bounded-length representations
    char repeat = '0';        // CharRepeat: c^j for j = 0,1,2,...
    std::string prefixes_of;  // Prefixes: every prefix of this string
  };

  bool eval_f(const FormulaPtr& f);
  bool eval_atom(const Atom& a);
  bool exists_block(std::vector<QV> vars, const FormulaPtr& core);

  bool try_str(const StrTermPtr& t, std::string& out) const;
  bool try_num(const NumTermPtr& t, Nat& out) const;

  const FormulaPtr& negation_of(const FormulaPtr& f);
  const std::vector<std::string>& free_names(const FormulaPtr& f);
  bool mentions(const FormulaPtr& f, const std::string& name);

  void collect_conjuncts(const FormulaPtr& f, std::vector<std::string>& shadow,
                         std::vector<Conjunct>& out);
  bool find_guide(const QV& v, const std::vector<Conjunct>& conjuncts, Guide& out);
  bool guide_from_formula(const QV& v, const Formula* f, Guide& out);
  bool guide_from_atom(const QV& v, const Atom& a, Guide& out);

  // Intersects two guides for the same variable. The result's candidate set
  // covers the intersection of the inputs' sets (exactly for most pairings,
  // by keeping the first guide for the few that do not compose).
  Guide merge_guides(Guide a, Guide b) const;
  static bool guide_matches(const Guide& g, const Value& val);

  std::size_t guided_cap() const;
  bool admit_str(const std::string& s, bool guided) const;

  // Invokes fn for each candidate; stops early when fn returns true.
  template <typename Fn>
  bool enumerate_guide(const Guide& g, const QV& v, Fn&& fn);

  const Value* env_lookup(const std::string& name) const;
  bool env_has(const std::string& name) const;

  ModelSpec spec_;
  EvalOptions opts_;
  std::vector<std::pair<std::string, Value>> env_;
  std::unordered_map<const Formula*, FormulaPtr> neg_cache_;
  std::unordered_map<const Formula*, std::vector<std::string>> fv_cache_;
  std::vector<FormulaPtr> retained_;
};

// One-shot convenience wrapper.
bool bounded_eval(const FormulaPtr& f, const Assignment& a, const ModelSpec& m);

}  // namespace strnum
