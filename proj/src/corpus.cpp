#include "strnum/corpus.hpp"

#include <random>
#include <stdexcept>

#include "strnum/ast_ops.hpp"
#include "strnum/syntax.hpp"

namespace strnum {

namespace {

const char* const kStrVars[] = {"S", "X", "Y"};
const char* const kNumVars[] = {"m", "n", "k"};
const char* const kStrLits[] = {"", "0", "1", "01", "110"};

class Gen {
 public:
  Gen(CorpusFlavor flavor, std::uint64_t seed, std::size_t max_depth)
      : flavor_(flavor), max_depth_(max_depth == 0 ? 1 : max_depth), rng_(seed) {}

  FormulaPtr one() {
    // Reject candidates whose printed form does not re-parse to an
    // alpha-equivalent AST (a free variable can print without any
    // sort-determining context). The retry sequence is part of the
    // deterministic stream, so a given seed always yields the same corpus.
    for (int attempt = 0; attempt < 64; ++attempt) {
      FormulaPtr f = flavor_ == CorpusFlavor::TpQf ? qf_tp() : closed();
      ParseResult back = parse(print(f));
      if (back && alpha_equal(back.formula, f)) return f;
    }
    throw std::logic_error("corpus generator could not produce a stable formula");
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  Nat small_const() { return Nat(pick(16)); }
  std::string str_var() { return kStrVars[pick(3)]; }
  std::string num_var() { return kNumVars[pick(3)]; }

  StrTermPtr str_term(std::size_t depth) {
    if (depth > 0 && pick(3) == 0) {
      std::vector<StrTermPtr> parts;
      std::size_t n = 2 + pick(2);
      parts.reserve(n);
      for (std::size_t i = 0; i < n; ++i) parts.push_back(str_term(depth - 1));
      return concat(std::move(parts));
    }
    return pick(2) == 0 ? svar(str_var()) : lit(kStrLits[pick(5)]);
  }

  NumTermPtr num_term(std::size_t depth) {
    if (depth > 0) {
      switch (pick(6)) {
        case 0: {
          std::vector<NumTermPtr> parts;
          std::size_t n = 2 + pick(2);
          parts.reserve(n);
          for (std::size_t i = 0; i < n; ++i) parts.push_back(num_term(depth - 1));
          return add(std::move(parts));
        }
        case 1:
          return len(str_term(depth - 1));
        case 2:
          return mul(Nat(1 + pick(4)), num_term(depth - 1));
        default:
          break;
      }
    }
    return pick(2) == 0 ? nvar(num_var()) : nlit(small_const());
  }

  FormulaPtr atom() {
    std::size_t term_depth = 1 + pick(2);
    switch (pick(4)) {
      case 0:
        return mk_atom(str_eq(str_term(term_depth), str_term(term_depth)));
      case 1:
        return mk_atom(num_eq(num_term(term_depth), num_term(term_depth)));
      case 2:
        return mk_atom(num_lt(num_term(term_depth), num_term(term_depth)));
      default:
        if (flavor_ == CorpusFlavor::Tpi) {
          return mk_atom(pi(num_term(term_depth - 1), num_term(term_depth - 1),
                            num_term(term_depth - 1)));
        }
        return mk_atom(numstr(num_term(term_depth - 1), str_term(term_depth)));
    }
  }

  FormulaPtr formula(std::size_t depth) {
    if (depth <= 1) return atom();
    switch (pick(8)) {
      case 0:
      case 1:
        return atom();
      case 2:
        return mk_not(formula(depth - 1));
      case 3:
      case 4: {
        std::vector<FormulaPtr> parts;
        std::size_t n = 2 + pick(2);
        parts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) parts.push_back(formula(depth - 1));
        return mk_and(std::move(parts));
      }
      case 5: {
        std::vector<FormulaPtr> parts;
        std::size_t n = 2 + pick(2);
        parts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) parts.push_back(formula(depth - 1));
        return mk_or(std::move(parts));
      }
      default: {
        Sort sort = pick(2) == 0 ? Sort::Str : Sort::Num;
        std::string name = sort == Sort::Str ? str_var() : num_var();
        return mk_quant(pick(2) == 0 ? Quant::Forall : Quant::Exists, std::move(name), sort,
                        formula(depth - 1));
      }
    }
  }

  // Closed Tsn/Tpi formula: binder lists carry explicit sorts, so the
  // printed form always re-parses exactly.
  FormulaPtr closed() {
    FormulaPtr matrix = formula(1 + pick(max_depth_));
    for (const auto& [name, sort] : free_vars(matrix)) {
      matrix = mk_quant(pick(2) == 0 ? Quant::Forall : Quant::Exists, name, sort,
                        std::move(matrix));
    }
    return matrix;
  }

  NumTermPtr qf_side() {
    switch (pick(4)) {
      case 0:
        return nvar(num_var());
      case 1:
        return nlit(small_const());
      case 2:
        return add({nvar(num_var()), nlit(small_const())});
      default:
        return add({nvar(num_var()), nvar(num_var())});
    }
  }

  NumTermPtr qf_pi_arg() { return pick(2) == 0 ? nvar(num_var()) : nlit(small_const()); }

  FormulaPtr qf_atom() {
    switch (pick(3)) {
      case 0:
        return mk_atom(num_eq(qf_side(), qf_side()));
      case 1:
        return mk_atom(num_lt(qf_side(), qf_side()));
      default:
        return mk_atom(pi(qf_pi_arg(), qf_pi_arg(), qf_pi_arg()));
    }
  }

  FormulaPtr qf_tp() {
    std::size_t n = 1 + pick(3);
    std::vector<FormulaPtr> atoms;
    atoms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      FormulaPtr a = qf_atom();
      if (pick(4) == 0) a = mk_not(std::move(a));
      atoms.push_back(std::move(a));
    }
    if (atoms.size() == 1) return std::move(atoms[0]);
    return pick(2) == 0 ? mk_and(std::move(atoms)) : mk_or(std::move(atoms));
  }

  CorpusFlavor flavor_;
  std::size_t max_depth_;
  std::mt19937_64 rng_;
};

}  // namespace

const char* corpus_flavor_name(CorpusFlavor f) {
  switch (f) {
    case CorpusFlavor::Tsn: return "tsn";
    case CorpusFlavor::Tpi: return "tpi";
    case CorpusFlavor::TpQf: return "tp-qf";
  }
  return "?";
}

std::optional<CorpusFlavor> corpus_flavor_from_name(std::string_view name) {
  if (name == "tsn") return CorpusFlavor::Tsn;
  if (name == "tpi") return CorpusFlavor::Tpi;
  if (name == "tp-qf") return CorpusFlavor::TpQf;
  return std::nullopt;
}

std::vector<FormulaPtr> generate_corpus(const CorpusOptions& opts) {
  Gen gen(opts.flavor, opts.seed, opts.max_depth);
  std::vector<FormulaPtr> out;
  out.reserve(opts.count);
  for (std::size_t i = 0; i < opts.count; ++i) out.push_back(gen.one());
  return out;
}

}  // namespace strnum
