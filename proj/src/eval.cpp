#include "strnum/eval.hpp"

#include <algorithm>

namespace strnum {

namespace {

// Finds some unbound variable in a term for error reporting.
template <typename Pred>
const std::string* unbound_in(const StrTermPtr& t, Pred&& bound);

template <typename Pred>
const std::string* unbound_in(const NumTermPtr& t, Pred&& bound) {
  return std::visit(
      [&](const auto& n) -> const std::string* {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumVar>) {
          return bound(n.name) ? nullptr : &n.name;
        } else if constexpr (std::is_same_v<T, Len>) {
          return unbound_in(n.arg, bound);
        } else if constexpr (std::is_same_v<T, Add>) {
          for (const auto& p : n.parts)
            if (const auto* u = unbound_in(p, bound)) return u;
          return nullptr;
        } else if constexpr (std::is_same_v<T, MulConst>) {
          return unbound_in(n.arg, bound);
        } else {
          return nullptr;
        }
      },
      t->node);
}

template <typename Pred>
const std::string* unbound_in(const StrTermPtr& t, Pred&& bound) {
  return std::visit(
      [&](const auto& n) -> const std::string* {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrVar>) {
          return bound(n.name) ? nullptr : &n.name;
        } else if constexpr (std::is_same_v<T, Concat>) {
          for (const auto& p : n.parts)
            if (const auto* u = unbound_in(p, bound)) return u;
          return nullptr;
        } else {
          return nullptr;
        }
      },
      t->node);
}

}  // namespace

Evaluator::Evaluator(ModelSpec m, EvalOptions opts) : spec_(std::move(m)), opts_(opts) {}

bool Evaluator::eval(const FormulaPtr& f, const Assignment& a) {
  validate_for_model(f, spec_);
  if (retained_.empty() || retained_.back().get() != f.get()) retained_.push_back(f);
  env_.clear();
  env_.reserve(a.size() + 16);
  for (const auto& [name, val] : a) env_.emplace_back(name, val);
  return eval_f(f);
}

const Value* Evaluator::env_lookup(const std::string& name) const {
  for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

bool Evaluator::env_has(const std::string& name) const { return env_lookup(name) != nullptr; }

std::size_t Evaluator::guided_cap() const {
  return std::max(spec_.max_str_len, opts_.guided_str_len_cap);
}

bool Evaluator::admit_str(const std::string& s, bool guided) const {
  if (s.size() > (guided ? guided_cap() : spec_.max_str_len)) return false;
  if (spec_.universe == Universe::RestrictedB && !in_b_domain(s)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

bool Evaluator::try_str(const StrTermPtr& t, std::string& out) const {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrLit>) {
          out = n.value;
          return true;
        } else if constexpr (std::is_same_v<T, StrVar>) {
          const Value* v = env_lookup(n.name);
          if (!v) return false;
          if (v->sort() != Sort::Str)
            throw SortError("variable '" + n.name + "' is bound to a number, not a string");
          out = v->str();
          return true;
        } else {
          out.clear();
          std::string piece;
          for (const auto& p : n.parts) {
            if (!try_str(p, piece)) return false;
            out += piece;
          }
          return true;
        }
      },
      t->node);
}

bool Evaluator::try_num(const NumTermPtr& t, Nat& out) const {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumLit>) {
          out = n.value;
          return true;
        } else if constexpr (std::is_same_v<T, NumVar>) {
          const Value* v = env_lookup(n.name);
          if (!v) return false;
          if (v->sort() != Sort::Num)
            throw SortError("variable '" + n.name + "' is bound to a string, not a number");
          out = v->num();
          return true;
        } else if constexpr (std::is_same_v<T, Len>) {
          std::string s;
          if (!try_str(n.arg, s)) return false;
          out = Nat(s.size());
          return true;
        } else if constexpr (std::is_same_v<T, Add>) {
          Nat sum = 0, piece;
          for (const auto& p : n.parts) {
            if (!try_num(p, piece)) return false;
            sum += piece;
          }
          out = std::move(sum);
          return true;
        } else {
          Nat arg;
          if (!try_num(n.arg, arg)) return false;
          out = n.factor * arg;
          return true;
        }
      },
      t->node);
}

bool Evaluator::eval_atom(const Atom& a) {
  auto bound = [&](const std::string& n) { return env_has(n); };
  auto must_str = [&](const StrTermPtr& t) {
    std::string s;
    if (!try_str(t, s)) {
      const std::string* u = unbound_in(t, bound);
      throw UnboundVariableError(u ? *u : "?");
    }
    return s;
  };
  auto must_num = [&](const NumTermPtr& t) {
    Nat v;
    if (!try_num(t, v)) {
      const std::string* u = unbound_in(t, bound);
      throw UnboundVariableError(u ? *u : "?");
    }
    return v;
  };
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrEq>) {
          return must_str(n.lhs) == must_str(n.rhs);
        } else if constexpr (std::is_same_v<T, NumEq>) {
          return must_num(n.lhs) == must_num(n.rhs);
        } else if constexpr (std::is_same_v<T, NumLt>) {
          return must_num(n.lhs) < must_num(n.rhs);
        } else if constexpr (std::is_same_v<T, NumStr>) {
          return numstr_holds(must_num(n.num), must_str(n.str));
        } else {
          return pi_holds(must_num(n.pow), must_num(n.base), must_num(n.exp));
        }
      },
      a.node);
}

// ---------------------------------------------------------------------------
// Caches
// ---------------------------------------------------------------------------

const FormulaPtr& Evaluator::negation_of(const FormulaPtr& f) {
  auto it = neg_cache_.find(f.get());
  if (it != neg_cache_.end()) return it->second;
  FormulaPtr result = std::visit(
      [&](const auto& n) -> FormulaPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          return mk_not(f);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<FormulaPtr> parts;
          parts.reserve(n.parts.size());
          for (const auto& p : n.parts) parts.push_back(negation_of(p));
          if constexpr (std::is_same_v<T, And>)
            return mk_or(std::move(parts));
          else
            return mk_and(std::move(parts));
        } else if constexpr (std::is_same_v<T, Not>) {
          return n.body;
        } else {
          Quant k = n.kind == Quant::Exists ? Quant::Forall : Quant::Exists;
          return mk_quant(k, n.var, n.sort, negation_of(n.body));
        }
      },
      f->node);
  return neg_cache_.emplace(f.get(), std::move(result)).first->second;
}

const std::vector<std::string>& Evaluator::free_names(const FormulaPtr& f) {
  auto it = fv_cache_.find(f.get());
  if (it != fv_cache_.end()) return it->second;
  std::vector<std::string> names;
  for (const auto& [n, s] : free_vars(f)) names.push_back(n);
  return fv_cache_.emplace(f.get(), std::move(names)).first->second;
}

bool Evaluator::mentions(const FormulaPtr& f, const std::string& name) {
  const auto& names = free_names(f);
  return std::binary_search(names.begin(), names.end(), name);
}

// ---------------------------------------------------------------------------
// Formula evaluation
// ---------------------------------------------------------------------------

bool Evaluator::eval_f(const FormulaPtr& f) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          return eval_atom(n.atom);
        } else if constexpr (std::is_same_v<T, And>) {
          for (const auto& p : n.parts)
            if (!eval_f(p)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Or>) {
          for (const auto& p : n.parts)
            if (eval_f(p)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, Not>) {
          return !eval_f(n.body);
        } else {
          // Collect the maximal block of like quantifiers.
          std::vector<QV> vars{{n.var, n.sort}};
          FormulaPtr core = n.body;
          while (const auto* q = std::get_if<Quantified>(&core->node)) {
            if (q->kind != n.kind) break;
            vars.push_back({q->var, q->sort});
            core = q->body;
          }
          if (n.kind == Quant::Exists) return exists_block(std::move(vars), core);
          return !exists_block(std::move(vars), negation_of(core));
        }
      },
      f->node);
}

bool Evaluator::exists_block(std::vector<QV> vars, const FormulaPtr& core) {
  // Variables the body never mentions reduce to a nonempty-domain check.
  {
    std::vector<QV> kept;
    kept.reserve(vars.size());
    for (auto& v : vars) {
      if (mentions(core, v.name)) {
        kept.push_back(std::move(v));
      } else if (Domain(v.sort, spec_).empty()) {
        return false;
      }
    }
    vars = std::move(kept);
  }
  if (vars.empty()) return eval_f(core);

  // An existential block distributes over a disjunction.
  if (const auto* orf = std::get_if<Or>(&core->node)) {
    for (const auto& part : orf->parts) {
      std::vector<QV> sub;
      bool dead = false;
      for (const auto& v : vars) {
        if (mentions(part, v.name)) {
          sub.push_back(v);
        } else if (Domain(v.sort, spec_).empty()) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      if (exists_block(std::move(sub), part)) return true;
    }
    return false;
  }

  // Prefer a variable some conjunct pins down — the tighter the better;
  // otherwise take the first and sweep its whole domain.
  std::vector<Conjunct> conjuncts;
  {
    std::vector<std::string> shadow;
    collect_conjuncts(core, shadow, conjuncts);
  }
  std::size_t pick = vars.size();
  Guide guide;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Guide g;
    if (!find_guide(vars[i], conjuncts, g)) continue;
    if (g.mode == Guide::Mode::Values && g.values.empty()) {
      return false;  // some conjunct pins this variable to nothing at all
    }
    bool better = pick == vars.size() ||
                  (g.mode == Guide::Mode::Values &&
                   (guide.mode != Guide::Mode::Values || g.values.size() < guide.values.size()));
    if (better) {
      pick = i;
      guide = std::move(g);
    }
  }
  if (pick == vars.size()) {
    pick = 0;
    guide = Guide{};  // full domain
  }
  QV var = vars[pick];
  vars.erase(vars.begin() + pick);
  return enumerate_guide(guide, var, [&](Value val) {
    env_.emplace_back(var.name, std::move(val));
    bool found = exists_block(vars, core);
    env_.pop_back();
    return found;
  });
}

void Evaluator::collect_conjuncts(const FormulaPtr& f, std::vector<std::string>& shadow,
                                  std::vector<Conjunct>& out) {
  if (const auto* a = std::get_if<And>(&f->node)) {
    for (const auto& p : a->parts) collect_conjuncts(p, shadow, out);
    return;
  }
  if (const auto* q = std::get_if<Quantified>(&f->node)) {
    // A conjunct under an inner quantifier is still a necessary condition on
    // outer variables, as long as the binder does not shadow a live binding
    // (terms would close over the wrong variable) and, for forall, the
    // domain is nonempty.
    if (env_has(q->var)) return;
    if (q->kind == Quant::Forall && Domain(q->sort, spec_).empty()) return;
    shadow.push_back(q->var);
    collect_conjuncts(q->body, shadow, out);
    shadow.pop_back();
    return;
  }
  out.push_back(Conjunct{f.get(), shadow});
}

bool Evaluator::find_guide(const QV& v, const std::vector<Conjunct>& conjuncts, Guide& out) {
  bool have = false;
  Guide acc;
  for (const auto& c : conjuncts) {
    if (std::find(c.shadowed.begin(), c.shadowed.end(), v.name) != c.shadowed.end()) continue;
    Guide g;
    if (!guide_from_formula(v, c.formula, g)) continue;
    acc = have ? merge_guides(std::move(acc), std::move(g)) : std::move(g);
    have = true;
    if (acc.mode == Guide::Mode::Values && acc.values.size() <= 1) break;
  }
  if (have) out = std::move(acc);
  return have;
}

bool Evaluator::guide_matches(const Guide& g, const Value& val) {
  switch (g.mode) {
    case Guide::Mode::Values:
      return std::find(g.values.begin(), g.values.end(), val) != g.values.end();
    case Guide::Mode::FullDomain:
      return true;
    case Guide::Mode::Length:
      return val.str().size() == g.length;
    case Guide::Mode::Reps:
      return numstr_holds(g.rep_of, val.str());
    case Guide::Mode::CharRepeat:
      return val.str().find_first_not_of(g.repeat) == std::string::npos;
    case Guide::Mode::Prefixes:
      return val.str().size() <= g.prefixes_of.size() &&
             g.prefixes_of.compare(0, val.str().size(), val.str()) == 0;
  }
  return true;
}

Evaluator::Guide Evaluator::merge_guides(Guide a, Guide b) const {
  using Mode = Guide::Mode;
  auto none = [] {
    Guide g;
    g.mode = Mode::Values;
    return g;
  };
  auto single = [&](std::string s) {
    Guide g;
    g.mode = Mode::Values;
    if (admit_str(s, /*guided=*/true)) g.values.push_back(Value{std::move(s)});
    return g;
  };

  if (b.mode == Mode::Values && a.mode != Mode::Values) std::swap(a, b);
  if (a.mode == Mode::Values) {
    std::vector<Value> kept;
    for (auto& v : a.values) {
      if (guide_matches(b, v)) kept.push_back(std::move(v));
    }
    a.values = std::move(kept);
    return a;
  }

  // Below here both guides are string-shaped (numeric guides are always
  // value lists). A fixed length collapses every other mode to at most one
  // candidate.
  if (b.mode == Mode::Length && a.mode != Mode::Length) std::swap(a, b);
  if (a.mode == Mode::Length) {
    switch (b.mode) {
      case Mode::Length:
        return b.length == a.length ? a : none();
      case Mode::CharRepeat:
        return single(std::string(a.length, b.repeat));
      case Mode::Reps: {
        std::string base = minimal_rep(b.rep_of);
        if (base.size() > a.length) return none();
        return single(std::string(a.length - base.size(), '0') + base);
      }
      case Mode::Prefixes:
        if (a.length > b.prefixes_of.size()) return none();
        return single(b.prefixes_of.substr(0, a.length));
      default:
        return a;
    }
  }
  if (a.mode == Mode::Reps || b.mode == Mode::Reps) {
    if (a.mode != Mode::Reps) std::swap(a, b);
    switch (b.mode) {
      case Mode::Reps:
        return b.rep_of == a.rep_of ? a : none();
      case Mode::CharRepeat: {
        // All-'0' strings only represent 0; an all-'1' string is the minimal
        // representation of its value or nothing.
        if (b.repeat == '0') return a.rep_of == 0 ? a : none();
        std::string base = minimal_rep(a.rep_of);
        if (base.find_first_not_of('1') != std::string::npos) return none();
        return single(std::move(base));
      }
      case Mode::Prefixes: {
        Guide g;
        g.mode = Mode::Values;
        std::size_t longest = std::min(guided_cap(), b.prefixes_of.size());
        for (std::size_t l = 1; l <= longest; ++l) {
          std::string s = b.prefixes_of.substr(0, l);
          if (numstr_holds(a.rep_of, s) && admit_str(s, /*guided=*/true)) {
            g.values.push_back(Value{std::move(s)});
          }
        }
        return g;
      }
      default:
        return a;
    }
  }
  if (a.mode == Mode::CharRepeat || b.mode == Mode::CharRepeat) {
    if (a.mode != Mode::CharRepeat) std::swap(a, b);
    switch (b.mode) {
      case Mode::CharRepeat:
        if (b.repeat == a.repeat) return a;
        return single(std::string());  // only the empty string repeats both
      case Mode::Prefixes: {
        std::size_t run = 0;
        while (run < b.prefixes_of.size() && b.prefixes_of[run] == a.repeat) ++run;
        b.prefixes_of.resize(run);
        return b;
      }
      default:
        return a;
    }
  }
  if (a.mode == Mode::Prefixes && b.mode == Mode::Prefixes) {
    std::size_t n = 0;
    while (n < a.prefixes_of.size() && n < b.prefixes_of.size() &&
           a.prefixes_of[n] == b.prefixes_of[n]) {
      ++n;
    }
    a.prefixes_of.resize(n);
    return a;
  }
  return a;
}

bool Evaluator::guide_from_formula(const QV& v, const Formula* f, Guide& out) {
  if (const auto* a = std::get_if<AtomF>(&f->node)) {
    return guide_from_atom(v, a->atom, out);
  }
  if (const auto* an = std::get_if<And>(&f->node)) {
    for (const auto& p : an->parts) {
      if (guide_from_formula(v, p.get(), out)) return true;
    }
    return false;
  }
  if (const auto* o = std::get_if<Or>(&f->node)) {
    // Union of per-branch candidates; sound only if every branch pins v to
    // an explicit value list.
    Guide merged;
    merged.mode = Guide::Mode::Values;
    for (const auto& p : o->parts) {
      Guide g;
      if (!guide_from_formula(v, p.get(), g) || g.mode != Guide::Mode::Values) return false;
      merged.values.insert(merged.values.end(), g.values.begin(), g.values.end());
    }
    out = std::move(merged);
    return true;
  }
  return false;
}

bool Evaluator::guide_from_atom(const QV& v, const Atom& a, Guide& out) {
  auto is_this_nvar = [&](const NumTermPtr& t) {
    const auto* nv = std::get_if<NumVar>(&t->node);
    return nv && nv->name == v.name;
  };
  auto is_this_svar = [&](const StrTermPtr& t) {
    const auto* sv = std::get_if<StrVar>(&t->node);
    return sv && sv->name == v.name;
  };
  auto num_values = [&](std::initializer_list<Nat> vals) {
    Guide g;
    g.mode = Guide::Mode::Values;
    for (const Nat& n : vals) {
      if (n <= spec_.max_num) g.values.push_back(Value{n});
    }
    return g;
  };
  auto str_values = [&](std::initializer_list<std::string> vals) {
    Guide g;
    g.mode = Guide::Mode::Values;
    for (const std::string& s : vals) {
      if (admit_str(s, /*guided=*/true)) g.values.push_back(Value{s});
    }
    return g;
  };
  auto no_candidates = [] {
    Guide g;
    g.mode = Guide::Mode::Values;
    return g;
  };

  if (v.sort == Sort::Num) {
    if (const auto* eq = std::get_if<NumEq>(&a.node)) {
      const NumTermPtr* sides[2][2] = {{&eq->lhs, &eq->rhs}, {&eq->rhs, &eq->lhs}};
      for (const auto& [var_side, val_side] : sides) {
        if (is_this_nvar(*var_side)) {
          Nat val;
          if (try_num(*val_side, val)) {
            out = num_values({val});
            return true;
          }
        }
      }
      // total = sum whose only open summand is v
      for (const auto& [sum_side, total_side] : sides) {
        const auto* addn = std::get_if<Add>(&(*sum_side)->node);
        if (!addn) continue;
        Nat total;
        if (!try_num(*total_side, total)) continue;
        Nat closed_sum = 0, piece;
        const NumTermPtr* open = nullptr;
        bool usable = true;
        for (const auto& part : addn->parts) {
          if (try_num(part, piece)) {
            closed_sum += piece;
          } else if (open) {
            usable = false;
            break;
          } else {
            open = &part;
          }
        }
        if (!usable || !open || !is_this_nvar(*open)) continue;
        if (total >= closed_sum) {
          out = num_values({Nat(total - closed_sum)});
        } else {
          out = no_candidates();
        }
        return true;
      }
      return false;
    }
    if (const auto* pa = std::get_if<PiAtom>(&a.node)) {
      if (!is_this_nvar(pa->pow)) return false;
      Nat b, e;
      if (!try_num(pa->base, b) || !try_num(pa->exp, e)) return false;
      if (b == 0) {
        out = num_values({Nat(0)});
        return true;
      }
      if (spec_.max_num == 0 || e > Nat(boost::multiprecision::msb(spec_.max_num))) {
        out = no_candidates();  // b * 2^e >= 2^e > max_num
        return true;
      }
      out = num_values({Nat(b << e.convert_to<unsigned long long>())});
      return true;
    }
    if (const auto* ns = std::get_if<NumStr>(&a.node)) {
      if (!is_this_nvar(ns->num)) return false;
      std::string s;
      if (!try_str(ns->str, s)) return false;
      if (s.empty()) {
        out = no_candidates();  // numstr never holds for the empty string
      } else {
        out = num_values({str_value(s)});
      }
      return true;
    }
    return false;
  }

  // String variable.
  if (const auto* se = std::get_if<StrEq>(&a.node)) {
    const StrTermPtr* sides[2][2] = {{&se->lhs, &se->rhs}, {&se->rhs, &se->lhs}};
    for (const auto& [var_side, val_side] : sides) {
      if (is_this_svar(*var_side)) {
        std::string w;
        if (try_str(*val_side, w)) {
          out = str_values({w});
          return true;
        }
      }
    }
    // c.v = v.c with a one-character literal forces v into c*.
    {
      const auto* lc = std::get_if<Concat>(&se->lhs->node);
      const auto* rc = std::get_if<Concat>(&se->rhs->node);
      if (lc && rc && lc->parts.size() == 2 && rc->parts.size() == 2) {
        auto lit_char = [](const StrTermPtr& t) -> const std::string* {
          const auto* l = std::get_if<StrLit>(&t->node);
          return (l && l->value.size() == 1) ? &l->value : nullptr;
        };
        const std::string* c1 = lit_char(lc->parts[0]);
        const std::string* c2 = lit_char(rc->parts[1]);
        if (c1 && c2 && *c1 == *c2 && is_this_svar(lc->parts[1]) && is_this_svar(rc->parts[0])) {
          out.mode = Guide::Mode::CharRepeat;
          out.repeat = (*c1)[0];
          return true;
        }
        c1 = lit_char(rc->parts[0]);
        c2 = lit_char(lc->parts[1]);
        if (c1 && c2 && *c1 == *c2 && is_this_svar(rc->parts[1]) && is_this_svar(lc->parts[0])) {
          out.mode = Guide::Mode::CharRepeat;
          out.repeat = (*c1)[0];
          return true;
        }
      }
    }
    // closed = concat(..., v, ...): v must be a prefix of whatever remains of
    // the closed side after the closed parts before its first occurrence;
    // with a closed suffix it is pinned exactly.
    for (const auto& [concat_side, closed_side] : sides) {
      const auto* cn = std::get_if<Concat>(&(*concat_side)->node);
      if (!cn) continue;
      std::string w;
      if (!try_str(*closed_side, w)) continue;
      std::size_t first = cn->parts.size();
      std::size_t occurrences = 0;
      for (std::size_t i = 0; i < cn->parts.size(); ++i) {
        if (is_this_svar(cn->parts[i])) {
          if (first == cn->parts.size()) first = i;
          ++occurrences;
        }
      }
      if (occurrences == 0) continue;
      std::string prefix, piece;
      bool closed_prefix = true;
      for (std::size_t i = 0; i < first; ++i) {
        if (!try_str(cn->parts[i], piece)) {
          closed_prefix = false;
          break;
        }
        prefix += piece;
      }
      if (!closed_prefix) continue;
      if (w.size() < prefix.size() || w.compare(0, prefix.size(), prefix) != 0) {
        out = no_candidates();
        return true;
      }
      std::string rem = w.substr(prefix.size());
      if (occurrences == 1) {
        std::string suffix;
        bool closed_suffix = true;
        for (std::size_t i = first + 1; i < cn->parts.size(); ++i) {
          if (!try_str(cn->parts[i], piece)) {
            closed_suffix = false;
            break;
          }
          suffix += piece;
        }
        if (closed_suffix) {
          if (rem.size() >= suffix.size() &&
              rem.compare(rem.size() - suffix.size(), suffix.size(), suffix) == 0) {
            out = str_values({rem.substr(0, rem.size() - suffix.size())});
          } else {
            out = no_candidates();
          }
          return true;
        }
      }
      out.mode = Guide::Mode::Prefixes;
      out.prefixes_of = std::move(rem);
      return true;
    }
    return false;
  }
  if (const auto* eqn = std::get_if<NumEq>(&a.node)) {
    const NumTermPtr* sides[2][2] = {{&eqn->lhs, &eqn->rhs}, {&eqn->rhs, &eqn->lhs}};
    for (const auto& [len_side, val_side] : sides) {
      const auto* ln = std::get_if<Len>(&(*len_side)->node);
      if (!ln || !is_this_svar(ln->arg)) continue;
      Nat k;
      if (!try_num(*val_side, k)) continue;
      if (k > Nat(guided_cap())) {
        out = no_candidates();
      } else {
        out.mode = Guide::Mode::Length;
        out.length = k.convert_to<std::size_t>();
      }
      return true;
    }
    return false;
  }
  if (const auto* ns = std::get_if<NumStr>(&a.node)) {
    if (!is_this_svar(ns->str)) return false;
    Nat i;
    if (!try_num(ns->num, i)) return false;
    out.mode = Guide::Mode::Reps;
    out.rep_of = std::move(i);
    return true;
  }
  return false;
}

template <typename Fn>
bool Evaluator::enumerate_guide(const Guide& g, const QV& v, Fn&& fn) {
  const bool restricted = spec_.universe == Universe::RestrictedB;
  switch (g.mode) {
    case Guide::Mode::Values: {
      for (const auto& val : g.values) {
        if (fn(val)) return true;
      }
      return false;
    }
    case Guide::Mode::FullDomain: {
      Domain d(v.sort, spec_);
      for (unsigned long long i = 0; i < d.size(); ++i) {
        if (fn(d.at(i))) return true;
      }
      return false;
    }
    case Guide::Mode::Length: {
      std::size_t k = g.length;  // <= guided_cap(), checked at construction
      if (k == 0) {
        std::string s;
        return admit_str(s, true) && fn(Value{std::move(s)});
      }
      if (k <= 63) {
        unsigned long long total = 1ull << k;
        for (unsigned long long o = 0; o < total; ++o) {
          std::string s = padded_binary(o, k);
          if (restricted && !in_b_domain(s)) continue;
          if (fn(Value{std::move(s)})) return true;
        }
        return false;
      }
      // Wider than a machine word: count through the patterns lazily. In
      // practice a caller satisfied with any such string stops on the first.
      Nat total = Nat(1) << k;
      for (Nat o = 0; o < total; ++o) {
        std::string s(k, '0');
        for (std::size_t b = 0; b < k; ++b) {
          if (boost::multiprecision::bit_test(o, static_cast<unsigned>(b))) s[k - 1 - b] = '1';
        }
        if (restricted && !in_b_domain(s)) continue;
        if (fn(Value{std::move(s)})) return true;
      }
      return false;
    }
    case Guide::Mode::Reps: {
      std::string base = minimal_rep(g.rep_of);
      std::size_t cap = guided_cap();
      if (base.size() > cap) return false;
      for (std::size_t L = base.size(); L <= cap; ++L) {
        std::string s = std::string(L - base.size(), '0') + base;
        if (restricted && !in_b_domain(s)) continue;
        if (fn(Value{std::move(s)})) return true;
      }
      return false;
    }
    case Guide::Mode::CharRepeat: {
      std::size_t cap = guided_cap();
      for (std::size_t L = 0; L <= cap; ++L) {
        std::string s(L, g.repeat);
        if (restricted && !in_b_domain(s)) continue;
        if (fn(Value{std::move(s)})) return true;
      }
      return false;
    }
    case Guide::Mode::Prefixes: {
      std::size_t cap = std::min(guided_cap(), g.prefixes_of.size());
      for (std::size_t L = 0; L <= cap; ++L) {
        std::string s = g.prefixes_of.substr(0, L);
        if (restricted && !in_b_domain(s)) continue;
        if (fn(Value{std::move(s)})) return true;
      }
      return false;
    }
  }
  return false;
}

bool bounded_eval(const FormulaPtr& f, const Assignment& a, const ModelSpec& m) {
  Evaluator ev(m);
  return ev.eval(f, a);
}

}  // namespace strnum
