#include "strnum/reductions.hpp"

#include "strnum/syntax.hpp"

namespace strnum {

namespace {

bool is_pi_atom(const FormulaPtr& f, const PiAtom** out) {
  const auto* a = std::get_if<AtomF>(&f->node);
  if (!a) return false;
  const auto* p = std::get_if<PiAtom>(&a->atom.node);
  if (!p) return false;
  if (out) *out = p;
  return true;
}

// (not (pi p x y))  ~>  (exists ((q Num)) (and (pi q x y) (not (= q p))))
FormulaPtr neg_pi_replacement(const PiAtom& a, FreshNames& names,
                              std::vector<std::string>& fresh_out) {
  std::string q = names.fresh("p'");
  fresh_out.push_back(q);
  return mk_exists(q, Sort::Num,
                   mk_and({mk_atom(pi(nvar(q), a.base, a.exp)),
                           mk_not(mk_atom(num_eq(nvar(q), a.pow)))}));
}

// (pi p x y)  ~>  (exists ((z Str) (xs Str)) (and ...))   [rule 6]
FormulaPtr rule6_replacement(const PiAtom& a, FreshNames& names,
                             std::vector<std::string>& fresh_out) {
  std::string z = names.fresh("z");
  std::string xs = names.fresh("xs");
  fresh_out.push_back(z);
  fresh_out.push_back(xs);
  FormulaPtr body =
      mk_and({mk_atom(str_eq(concat({lit("0"), svar(z)}), concat({svar(z), lit("0")}))),
              mk_atom(num_eq(len(svar(z)), a.exp)),
              mk_atom(numstr(a.pow, concat({svar(xs), svar(z)}))),
              mk_atom(numstr(a.base, svar(xs)))});
  return mk_exists(z, Sort::Str, mk_exists(xs, Sort::Str, body));
}

// The universal core of the numstr(i, s) encoding: no n p t h ph x px l lu
// sh sx sl witnesses an overflow or a bit discrepancy.
FormulaPtr numstr_replacement(const NumStr& a, FreshNames& names,
                              std::vector<std::string>& fresh_out) {
  auto fresh_num = [&](const char* base) {
    fresh_out.push_back(names.fresh(base));
    return fresh_out.back();
  };
  std::string n = fresh_num("n"), p = fresh_num("p"), t = fresh_num("t"), h = fresh_num("h"),
              ph = fresh_num("ph"), x = fresh_num("x"), px = fresh_num("px"), l = fresh_num("l"),
              lu = fresh_num("lu"), sh = fresh_num("sh"), sx = fresh_num("sx"),
              sl = fresh_num("sl"), c = fresh_num("c");

  const NumTermPtr& i = a.num;
  const StrTermPtr& s = a.str;

  // len(s) = n  /\  pi(p, 1, n)  /\  i >= p
  FormulaPtr overflow = mk_and({mk_atom(num_eq(len(s), nvar(n))),
                                mk_atom(pi(nvar(p), nlit(1), nvar(n))),
                                mk_not(mk_atom(num_lt(i, nvar(p))))});

  // Bit t of i is x, but character len(s)-1-t of s disagrees.
  FormulaPtr wrong_bit =
      mk_or({mk_and({mk_atom(num_eq(nvar(x), nlit(0))), mk_atom(str_eq(svar(sx), lit("1")))}),
             mk_and({mk_atom(num_eq(nvar(x), nlit(1))), mk_atom(str_eq(svar(sx), lit("0")))})});
  FormulaPtr discrepancy =
      mk_and({mk_atom(pi(nvar(ph), nvar(h), add({nvar(t), nlit(1)}))),
              mk_atom(pi(nvar(px), nvar(x), nvar(t))),
              mk_atom(num_eq(i, add({nvar(ph), nvar(px), nvar(l)}))),
              mk_atom(pi(nvar(lu), nlit(1), nvar(t))),
              mk_atom(num_lt(nvar(l), nvar(lu))),
              mk_atom(str_eq(s, concat({svar(sh), svar(sx), svar(sl)}))),
              mk_atom(num_eq(len(svar(sl)), nvar(t))),
              mk_atom(num_eq(len(svar(sx)), nlit(1))),
              wrong_bit});

  FormulaPtr matrix = mk_and({mk_not(overflow), mk_not(discrepancy)});
  const std::pair<const std::string*, Sort> binders[] = {
      {&n, Sort::Num},  {&p, Sort::Num},  {&t, Sort::Num},  {&h, Sort::Num},
      {&ph, Sort::Num}, {&x, Sort::Num},  {&px, Sort::Num}, {&l, Sort::Num},
      {&lu, Sort::Num}, {&sh, Sort::Str}, {&sx, Sort::Str}, {&sl, Sort::Str}};
  FormulaPtr universal = matrix;
  for (std::size_t k = std::size(binders); k-- > 0;) {
    universal = mk_forall(*binders[k].first, binders[k].second, universal);
  }

  // Nonemptiness side condition: len(s) = c + 1 for some c.
  FormulaPtr nonempty =
      mk_exists(c, Sort::Num, mk_atom(num_eq(len(s), add({nvar(c), nlit(1)}))));
  return mk_and({nonempty, universal});
}

FormulaPtr walk_eliminate(const FormulaPtr& f, FreshNames& names, std::vector<Rewrite>* trace,
                          bool& changed) {
  return std::visit(
      [&](const auto& node) -> FormulaPtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          return f;
        } else if constexpr (std::is_same_v<T, Not>) {
          const PiAtom* a = nullptr;
          if (is_pi_atom(node.body, &a)) {
            std::vector<std::string> fresh;
            FormulaPtr repl = neg_pi_replacement(*a, names, fresh);
            if (trace) {
              trace->push_back({f, std::move(fresh), repl,
                                "negated pi eliminated via functionality of pi"});
            }
            changed = true;
            return repl;
          }
          FormulaPtr body = walk_eliminate(node.body, names, trace, changed);
          return body.get() == node.body.get() ? f : mk_not(body);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<FormulaPtr> parts;
          bool any = false;
          for (const auto& part : node.parts) {
            parts.push_back(walk_eliminate(part, names, trace, changed));
            any = any || parts.back().get() != part.get();
          }
          if (!any) return f;
          return std::is_same_v<T, And> ? mk_and(std::move(parts)) : mk_or(std::move(parts));
        } else {
          static_assert(std::is_same_v<T, Quantified>);
          FormulaPtr body = walk_eliminate(node.body, names, trace, changed);
          return body.get() == node.body.get() ? f
                                               : mk_quant(node.kind, node.var, node.sort, body);
        }
      },
      f->node);
}

FormulaPtr walk_rule6(const FormulaPtr& f, FreshNames& names, std::vector<Rewrite>* trace) {
  return std::visit(
      [&](const auto& node) -> FormulaPtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          const PiAtom* a = nullptr;
          if (is_pi_atom(f, &a)) {
            std::vector<std::string> fresh;
            FormulaPtr repl = rule6_replacement(*a, names, fresh);
            if (trace) {
              trace->push_back(
                  {f, std::move(fresh), repl, "pi expressed via numstr over a zero run"});
            }
            return repl;
          }
          return f;
        } else if constexpr (std::is_same_v<T, Not>) {
          if (is_pi_atom(node.body, nullptr)) {
            throw NegativePiAtomError(
                "negated pi atom " + print(node.body) +
                " cannot be rewritten positively; eliminate negative occurrences first");
          }
          FormulaPtr body = walk_rule6(node.body, names, trace);
          return body.get() == node.body.get() ? f : mk_not(body);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<FormulaPtr> parts;
          bool any = false;
          for (const auto& part : node.parts) {
            parts.push_back(walk_rule6(part, names, trace));
            any = any || parts.back().get() != part.get();
          }
          if (!any) return f;
          return std::is_same_v<T, And> ? mk_and(std::move(parts)) : mk_or(std::move(parts));
        } else {
          static_assert(std::is_same_v<T, Quantified>);
          FormulaPtr body = walk_rule6(node.body, names, trace);
          return body.get() == node.body.get() ? f
                                               : mk_quant(node.kind, node.var, node.sort, body);
        }
      },
      f->node);
}

FormulaPtr walk_numstr(const FormulaPtr& f, FreshNames& names, std::vector<Rewrite>* trace) {
  return std::visit(
      [&](const auto& node) -> FormulaPtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          if (const auto* a = std::get_if<NumStr>(&node.atom.node)) {
            std::vector<std::string> fresh;
            FormulaPtr repl = numstr_replacement(*a, names, fresh);
            if (trace) {
              trace->push_back({f, std::move(fresh), repl,
                                "numstr expressed via pi; conjunct (exists ((c Num)) (= (len s) "
                                "(+ c 1))) added as the nonemptiness side condition"});
            }
            return repl;
          }
          return f;
        } else if constexpr (std::is_same_v<T, Not>) {
          FormulaPtr body = walk_numstr(node.body, names, trace);
          return body.get() == node.body.get() ? f : mk_not(body);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<FormulaPtr> parts;
          bool any = false;
          for (const auto& part : node.parts) {
            parts.push_back(walk_numstr(part, names, trace));
            any = any || parts.back().get() != part.get();
          }
          if (!any) return f;
          return std::is_same_v<T, And> ? mk_and(std::move(parts)) : mk_or(std::move(parts));
        } else {
          static_assert(std::is_same_v<T, Quantified>);
          FormulaPtr body = walk_numstr(node.body, names, trace);
          return body.get() == node.body.get() ? f
                                               : mk_quant(node.kind, node.var, node.sort, body);
        }
      },
      f->node);
}

void require_well_sorted(const FormulaPtr& f, const char* op) {
  if (!f) throw ConstructionError(std::string(op) + ": null formula");
  if (!well_sorted(f)) {
    throw SortError(std::string(op) + ": formula is not well-sorted");
  }
}

}  // namespace

FormulaPtr eliminate_negative_pi(const FormulaPtr& f) {
  require_well_sorted(f, "eliminate_negative_pi");
  FreshNames names;
  names.reserve_all(f);
  bool changed = false;
  return walk_eliminate(f, names, nullptr, changed);
}

ReductionTrace reduce_tp_to_tsn(const FormulaPtr& f, bool eliminate_negatives) {
  require_well_sorted(f, "reduce_tp_to_tsn");
  if (!fits_tp(f)) {
    throw WrongTheoryError("reduce_tp_to_tsn expects a power-arithmetic formula; this one is in " +
                           std::string(theory_name(theory_of(f))));
  }
  if (!is_quantifier_free(f)) {
    throw WrongTheoryError("reduce_tp_to_tsn expects a quantifier-free formula");
  }
  ReductionTrace trace;
  trace.source = f;
  FormulaPtr cur = to_nnf(f);
  FreshNames names;
  names.reserve_all(cur);
  if (eliminate_negatives) {
    bool changed = false;
    cur = walk_eliminate(cur, names, &trace.rewrites, changed);
  }
  trace.target = walk_rule6(cur, names, &trace.rewrites);
  return trace;
}

ReductionTrace reduce_tsn_to_tpi(const FormulaPtr& f) {
  require_well_sorted(f, "reduce_tsn_to_tpi");
  if (!fits_tsn(f)) {
    throw WrongTheoryError(
        "reduce_tsn_to_tpi expects a formula without pi atoms; this one is in " +
        std::string(theory_name(theory_of(f))));
  }
  ReductionTrace trace;
  trace.source = f;
  FreshNames names;
  names.reserve_all(f);
  trace.target = walk_numstr(f, names, &trace.rewrites);
  return trace;
}

ModelSpec sound_bounds_for_numstr_check(const Nat& i, std::size_t s_len) {
  Nat bound = Nat(1) << (s_len + 1);
  if (i + 1 > bound) bound = i + 1;
  if (bound < 2) bound = 2;
  ModelSpec m;
  m.universe = Universe::CanonicalA;
  m.max_str_len = s_len;
  m.max_num = bound;
  return m;
}

}  // namespace strnum
