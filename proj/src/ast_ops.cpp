#include "strnum/ast_ops.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace strnum {

const char* theory_name(TheoryTag t) {
  switch (t) {
    case TheoryTag::Tsn: return "tsn";
    case TheoryTag::Tp: return "tp";
    case TheoryTag::Tpi: return "tpi";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Generic walkers
// ---------------------------------------------------------------------------

namespace {

// Calls fn(name, sort) for every variable occurrence in the term.
template <typename Fn>
void visit_vars(const StrTermPtr& t, Fn&& fn) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrVar>) {
          fn(n.name, Sort::Str);
        } else if constexpr (std::is_same_v<T, Concat>) {
          for (const auto& p : n.parts) visit_vars(p, fn);
        }
      },
      t->node);
}

template <typename Fn>
void visit_vars(const NumTermPtr& t, Fn&& fn) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumVar>) {
          fn(n.name, Sort::Num);
        } else if constexpr (std::is_same_v<T, Len>) {
          visit_vars(n.arg, fn);
        } else if constexpr (std::is_same_v<T, Add>) {
          for (const auto& p : n.parts) visit_vars(p, fn);
        } else if constexpr (std::is_same_v<T, MulConst>) {
          visit_vars(n.arg, fn);
        }
      },
      t->node);
}

template <typename Fn>
void visit_vars(const Atom& a, Fn&& fn) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrEq>) {
          visit_vars(n.lhs, fn);
          visit_vars(n.rhs, fn);
        } else if constexpr (std::is_same_v<T, NumEq> || std::is_same_v<T, NumLt>) {
          visit_vars(n.lhs, fn);
          visit_vars(n.rhs, fn);
        } else if constexpr (std::is_same_v<T, NumStr>) {
          visit_vars(n.num, fn);
          visit_vars(n.str, fn);
        } else {
          visit_vars(n.pow, fn);
          visit_vars(n.base, fn);
          visit_vars(n.exp, fn);
        }
      },
      a.node);
}

}  // namespace

// ---------------------------------------------------------------------------
// well_sorted / free_vars / all_names
// ---------------------------------------------------------------------------

namespace {

struct SortChecker {
  std::map<std::string, std::vector<Sort>> bound;
  std::map<std::string, Sort> free;
  bool ok = true;

  void occurrence(const std::string& name, Sort sort) {
    if (!ok) return;
    auto it = bound.find(name);
    if (it != bound.end() && !it->second.empty()) {
      if (it->second.back() != sort) ok = false;
      return;
    }
    auto [fit, inserted] = free.emplace(name, sort);
    if (!inserted && fit->second != sort) ok = false;
  }

  void walk(const FormulaPtr& f) {
    if (!ok) return;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AtomF>) {
            visit_vars(n.atom, [&](const std::string& v, Sort s) { occurrence(v, s); });
          } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
            for (const auto& p : n.parts) walk(p);
          } else if constexpr (std::is_same_v<T, Not>) {
            walk(n.body);
          } else {
            bound[n.var].push_back(n.sort);
            walk(n.body);
            bound[n.var].pop_back();
          }
        },
        f->node);
  }
};

}  // namespace

bool well_sorted(const FormulaPtr& f) {
  SortChecker c;
  c.walk(f);
  return c.ok;
}

namespace {

void free_vars_walk(const FormulaPtr& f, std::map<std::string, int>& shadowed,
                    std::map<std::string, Sort>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          visit_vars(n.atom, [&](const std::string& v, Sort s) {
            auto it = shadowed.find(v);
            if (it == shadowed.end() || it->second == 0) out.emplace(v, s);
          });
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          for (const auto& p : n.parts) free_vars_walk(p, shadowed, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          free_vars_walk(n.body, shadowed, out);
        } else {
          ++shadowed[n.var];
          free_vars_walk(n.body, shadowed, out);
          --shadowed[n.var];
        }
      },
      f->node);
}

}  // namespace

std::map<std::string, Sort> free_vars(const FormulaPtr& f) {
  std::map<std::string, Sort> out;
  std::map<std::string, int> shadowed;
  free_vars_walk(f, shadowed, out);
  return out;
}

bool is_free_in(const FormulaPtr& f, const std::string& name) {
  return free_vars(f).count(name) > 0;
}

std::set<std::string> all_names(const FormulaPtr& f) {
  std::set<std::string> out;
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AtomF>) {
            visit_vars(n.atom, [&](const std::string& v, Sort) { out.insert(v); });
          } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
            for (const auto& p : n.parts) walk(p);
          } else if constexpr (std::is_same_v<T, Not>) {
            walk(n.body);
          } else {
            out.insert(n.var);
            walk(n.body);
          }
        },
        g->node);
  };
  walk(f);
  return out;
}

// ---------------------------------------------------------------------------
// FreshNames
// ---------------------------------------------------------------------------

FreshNames::FreshNames(const std::set<std::string>& in_use) {
  for (const auto& n : in_use) reserve(n);
}

void FreshNames::reserve(const std::string& name) { used_.insert(name); }

void FreshNames::reserve_all(const FormulaPtr& f) {
  for (const auto& n : all_names(f)) reserve(n);
}

std::string FreshNames::fresh(const std::string& base) {
  unsigned long long k = next_.count(base) ? next_[base] : 1;
  std::string name;
  do {
    name = base + "!" + std::to_string(k);
    ++k;
  } while (used_.count(name));
  next_[base] = k;
  used_.insert(name);
  return name;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

Sort term_sort(const Term& t) {
  return std::holds_alternative<StrTermPtr>(t) ? Sort::Str : Sort::Num;
}

std::set<std::string> term_names(const Term& t) {
  std::set<std::string> out;
  if (auto* s = std::get_if<StrTermPtr>(&t)) {
    visit_vars(*s, [&](const std::string& v, Sort) { out.insert(v); });
  } else {
    visit_vars(std::get<NumTermPtr>(t), [&](const std::string& v, Sort) { out.insert(v); });
  }
  return out;
}

struct Substituter {
  const std::string& var;
  const Term& repl;
  const std::set<std::string>& repl_names;
  FreshNames& names;

  StrTermPtr str_term(const StrTermPtr& t) {
    return std::visit(
        [&](const auto& n) -> StrTermPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, StrLit>) {
            return t;
          } else if constexpr (std::is_same_v<T, StrVar>) {
            if (n.name != var) return t;
            if (auto* s = std::get_if<StrTermPtr>(&repl)) return *s;
            throw SortError("cannot substitute a Num term for Str variable '" + var + "'");
          } else {
            std::vector<StrTermPtr> parts;
            parts.reserve(n.parts.size());
            for (const auto& p : n.parts) parts.push_back(str_term(p));
            return concat(std::move(parts));
          }
        },
        t->node);
  }

  NumTermPtr num_term(const NumTermPtr& t) {
    return std::visit(
        [&](const auto& n) -> NumTermPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, NumLit>) {
            return t;
          } else if constexpr (std::is_same_v<T, NumVar>) {
            if (n.name != var) return t;
            if (auto* s = std::get_if<NumTermPtr>(&repl)) return *s;
            throw SortError("cannot substitute a Str term for Num variable '" + var + "'");
          } else if constexpr (std::is_same_v<T, Len>) {
            return len(str_term(n.arg));
          } else if constexpr (std::is_same_v<T, Add>) {
            std::vector<NumTermPtr> parts;
            parts.reserve(n.parts.size());
            for (const auto& p : n.parts) parts.push_back(num_term(p));
            return add(std::move(parts));
          } else {
            return mul(n.factor, num_term(n.arg));
          }
        },
        t->node);
  }

  Atom atom(const Atom& a) {
    return std::visit(
        [&](const auto& n) -> Atom {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, StrEq>) {
            return str_eq(str_term(n.lhs), str_term(n.rhs));
          } else if constexpr (std::is_same_v<T, NumEq>) {
            return num_eq(num_term(n.lhs), num_term(n.rhs));
          } else if constexpr (std::is_same_v<T, NumLt>) {
            return num_lt(num_term(n.lhs), num_term(n.rhs));
          } else if constexpr (std::is_same_v<T, NumStr>) {
            return numstr(num_term(n.num), str_term(n.str));
          } else {
            return pi(num_term(n.pow), num_term(n.base), num_term(n.exp));
          }
        },
        a.node);
  }

  FormulaPtr formula(const FormulaPtr& f) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AtomF>) {
            return mk_atom(atom(n.atom));
          } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
            std::vector<FormulaPtr> parts;
            parts.reserve(n.parts.size());
            for (const auto& p : n.parts) parts.push_back(formula(p));
            if constexpr (std::is_same_v<T, And>)
              return mk_and(std::move(parts));
            else
              return mk_or(std::move(parts));
          } else if constexpr (std::is_same_v<T, Not>) {
            return mk_not(formula(n.body));
          } else {
            if (n.var == var) return f;  // occurrences below are bound
            if (repl_names.count(n.var)) {
              // The binder would capture a variable of the replacement;
              // rename it first.
              std::string renamed = names.fresh(n.var.substr(0, n.var.find('!')));
              Term v = n.sort == Sort::Str ? Term{svar(renamed)} : Term{nvar(renamed)};
              Substituter inner{n.var, v, term_names(v), names};
              return mk_quant(n.kind, renamed, n.sort, formula(inner.formula(n.body)));
            }
            return mk_quant(n.kind, n.var, n.sort, formula(n.body));
          }
        },
        f->node);
  }
};

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& replacement) {
  std::set<std::string> in_use = all_names(f);
  auto rn = term_names(replacement);
  in_use.insert(rn.begin(), rn.end());
  in_use.insert(var);
  FreshNames names(in_use);
  Substituter s{var, replacement, rn, names};
  return s.formula(f);
}

// ---------------------------------------------------------------------------
// Alpha equivalence and normalization
// ---------------------------------------------------------------------------

namespace {

struct AlphaCtx {
  std::map<std::string, std::vector<int>> a, b;
  int depth = 0;

  // -1 when free
  static int lookup(const std::map<std::string, std::vector<int>>& m, const std::string& n) {
    auto it = m.find(n);
    return (it == m.end() || it->second.empty()) ? -1 : it->second.back();
  }

  bool var_eq(const std::string& x, const std::string& y) {
    int ia = lookup(a, x), ib = lookup(b, y);
    if (ia < 0 && ib < 0) return x == y;  // both free
    return ia == ib && ia >= 0;
  }
};

bool aeq_str(const StrTermPtr& s, const StrTermPtr& t, AlphaCtx& ctx) {
  if (s->node.index() != t->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(t->node);
        if constexpr (std::is_same_v<T, StrLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, StrVar>) {
          return ctx.var_eq(x.name, y.name);
        } else {
          if (x.parts.size() != y.parts.size()) return false;
          for (size_t i = 0; i < x.parts.size(); ++i)
            if (!aeq_str(x.parts[i], y.parts[i], ctx)) return false;
          return true;
        }
      },
      s->node);
}

bool aeq_num(const NumTermPtr& s, const NumTermPtr& t, AlphaCtx& ctx) {
  if (s->node.index() != t->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(t->node);
        if constexpr (std::is_same_v<T, NumLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, NumVar>) {
          return ctx.var_eq(x.name, y.name);
        } else if constexpr (std::is_same_v<T, Len>) {
          return aeq_str(x.arg, y.arg, ctx);
        } else if constexpr (std::is_same_v<T, Add>) {
          if (x.parts.size() != y.parts.size()) return false;
          for (size_t i = 0; i < x.parts.size(); ++i)
            if (!aeq_num(x.parts[i], y.parts[i], ctx)) return false;
          return true;
        } else {
          return x.factor == y.factor && aeq_num(x.arg, y.arg, ctx);
        }
      },
      s->node);
}

bool aeq_atom(const Atom& p, const Atom& q, AlphaCtx& ctx) {
  if (p.node.index() != q.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(q.node);
        if constexpr (std::is_same_v<T, StrEq>) {
          return aeq_str(x.lhs, y.lhs, ctx) && aeq_str(x.rhs, y.rhs, ctx);
        } else if constexpr (std::is_same_v<T, NumEq> || std::is_same_v<T, NumLt>) {
          return aeq_num(x.lhs, y.lhs, ctx) && aeq_num(x.rhs, y.rhs, ctx);
        } else if constexpr (std::is_same_v<T, NumStr>) {
          return aeq_num(x.num, y.num, ctx) && aeq_str(x.str, y.str, ctx);
        } else {
          return aeq_num(x.pow, y.pow, ctx) && aeq_num(x.base, y.base, ctx) &&
                 aeq_num(x.exp, y.exp, ctx);
        }
      },
      p.node);
}

bool aeq(const FormulaPtr& f, const FormulaPtr& g, AlphaCtx& ctx) {
  if (f->node.index() != g->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(g->node);
        if constexpr (std::is_same_v<T, AtomF>) {
          return aeq_atom(x.atom, y.atom, ctx);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          if (x.parts.size() != y.parts.size()) return false;
          for (size_t i = 0; i < x.parts.size(); ++i)
            if (!aeq(x.parts[i], y.parts[i], ctx)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Not>) {
          return aeq(x.body, y.body, ctx);
        } else {
          if (x.kind != y.kind || x.sort != y.sort) return false;
          ctx.a[x.var].push_back(ctx.depth);
          ctx.b[y.var].push_back(ctx.depth);
          ++ctx.depth;
          bool r = aeq(x.body, y.body, ctx);
          --ctx.depth;
          ctx.a[x.var].pop_back();
          ctx.b[y.var].pop_back();
          return r;
        }
      },
      f->node);
}

}  // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
  AlphaCtx ctx;
  return aeq(a, b, ctx);
}

namespace {

StrTermPtr rename_str(const StrTermPtr& t, const std::map<std::string, std::string>& env) {
  return std::visit(
      [&](const auto& n) -> StrTermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrLit>) {
          return t;
        } else if constexpr (std::is_same_v<T, StrVar>) {
          auto it = env.find(n.name);
          return it == env.end() ? t : svar(it->second);
        } else {
          std::vector<StrTermPtr> parts;
          for (const auto& p : n.parts) parts.push_back(rename_str(p, env));
          return concat(std::move(parts));
        }
      },
      t->node);
}

NumTermPtr rename_num(const NumTermPtr& t, const std::map<std::string, std::string>& env) {
  return std::visit(
      [&](const auto& n) -> NumTermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumLit>) {
          return t;
        } else if constexpr (std::is_same_v<T, NumVar>) {
          auto it = env.find(n.name);
          return it == env.end() ? t : nvar(it->second);
        } else if constexpr (std::is_same_v<T, Len>) {
          return len(rename_str(n.arg, env));
        } else if constexpr (std::is_same_v<T, Add>) {
          std::vector<NumTermPtr> parts;
          for (const auto& p : n.parts) parts.push_back(rename_num(p, env));
          return add(std::move(parts));
        } else {
          return mul(n.factor, rename_num(n.arg, env));
        }
      },
      t->node);
}

Atom rename_atom(const Atom& a, const std::map<std::string, std::string>& env) {
  return std::visit(
      [&](const auto& n) -> Atom {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrEq>) {
          return str_eq(rename_str(n.lhs, env), rename_str(n.rhs, env));
        } else if constexpr (std::is_same_v<T, NumEq>) {
          return num_eq(rename_num(n.lhs, env), rename_num(n.rhs, env));
        } else if constexpr (std::is_same_v<T, NumLt>) {
          return num_lt(rename_num(n.lhs, env), rename_num(n.rhs, env));
        } else if constexpr (std::is_same_v<T, NumStr>) {
          return numstr(rename_num(n.num, env), rename_str(n.str, env));
        } else {
          return pi(rename_num(n.pow, env), rename_num(n.base, env), rename_num(n.exp, env));
        }
      },
      a.node);
}

struct Normalizer {
  FreshNames names;
  std::set<std::string> claimed;

  FormulaPtr walk(const FormulaPtr& f, std::map<std::string, std::string>& env) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AtomF>) {
            return mk_atom(rename_atom(n.atom, env));
          } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
            std::vector<FormulaPtr> parts;
            for (const auto& p : n.parts) parts.push_back(walk(p, env));
            if constexpr (std::is_same_v<T, And>)
              return mk_and(std::move(parts));
            else
              return mk_or(std::move(parts));
          } else if constexpr (std::is_same_v<T, Not>) {
            return mk_not(walk(n.body, env));
          } else {
            std::string v = n.var;
            if (claimed.count(v)) {
              v = names.fresh(n.var.substr(0, n.var.find('!')));
            }
            claimed.insert(v);
            auto it = env.find(n.var);
            std::string saved;
            bool had = it != env.end();
            if (had) saved = it->second;
            env[n.var] = v;
            FormulaPtr body = walk(n.body, env);
            if (had)
              env[n.var] = saved;
            else
              env.erase(n.var);
            return mk_quant(n.kind, v, n.sort, std::move(body));
          }
        },
        f->node);
  }
};

}  // namespace

FormulaPtr alpha_normalize(const FormulaPtr& f) {
  Normalizer n;
  n.names = FreshNames(all_names(f));
  for (const auto& [v, s] : free_vars(f)) n.claimed.insert(v);
  std::map<std::string, std::string> env;
  return n.walk(f, env);
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

namespace {

FormulaPtr nnf_walk(const FormulaPtr& f, bool negated) {
  return std::visit(
      [&](const auto& n) -> FormulaPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          return negated ? mk_not(f) : f;
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<FormulaPtr> parts;
          parts.reserve(n.parts.size());
          for (const auto& p : n.parts) parts.push_back(nnf_walk(p, negated));
          bool make_and = std::is_same_v<T, And> != negated;
          return make_and ? mk_and(std::move(parts)) : mk_or(std::move(parts));
        } else if constexpr (std::is_same_v<T, Not>) {
          return nnf_walk(n.body, !negated);
        } else {
          Quant k = n.kind;
          if (negated) k = k == Quant::Exists ? Quant::Forall : Quant::Exists;
          return mk_quant(k, n.var, n.sort, nnf_walk(n.body, negated));
        }
      },
      f->node);
}

struct Prefix {
  std::vector<Quantified> qs;  // bodies unused; kind/var/sort only
};

std::pair<Prefix, FormulaPtr> hoist(const FormulaPtr& f) {
  return std::visit(
      [&](const auto& n) -> std::pair<Prefix, FormulaPtr> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          return {Prefix{}, f};
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          Prefix pre;
          std::vector<FormulaPtr> parts;
          for (const auto& p : n.parts) {
            auto [ppre, matrix] = hoist(p);
            pre.qs.insert(pre.qs.end(), ppre.qs.begin(), ppre.qs.end());
            parts.push_back(matrix);
          }
          if constexpr (std::is_same_v<T, And>)
            return {std::move(pre), mk_and(std::move(parts))};
          else
            return {std::move(pre), mk_or(std::move(parts))};
        } else if constexpr (std::is_same_v<T, Not>) {
          auto [pre, matrix] = hoist(n.body);
          for (auto& q : pre.qs)
            q.kind = q.kind == Quant::Exists ? Quant::Forall : Quant::Exists;
          return {std::move(pre), mk_not(matrix)};
        } else {
          auto [pre, matrix] = hoist(n.body);
          pre.qs.insert(pre.qs.begin(), Quantified{n.kind, n.var, n.sort, nullptr});
          return {std::move(pre), matrix};
        }
      },
      f->node);
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf_walk(f, false); }

FormulaPtr to_prenex(const FormulaPtr& f) {
  auto [pre, matrix] = hoist(alpha_normalize(f));
  FormulaPtr out = matrix;
  for (auto it = pre.qs.rbegin(); it != pre.qs.rend(); ++it) {
    out = mk_quant(it->kind, it->var, it->sort, std::move(out));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Theory classification
// ---------------------------------------------------------------------------

namespace {

struct Features {
  bool pi = false;
  bool numstr = false;
  bool len = false;
  bool str = false;  // anything string-sorted
};

void scan_str(const StrTermPtr&, Features& ft) { ft.str = true; }

void scan_num(const NumTermPtr& t, Features& ft) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Len>) {
          ft.len = true;
          scan_str(n.arg, ft);
        } else if constexpr (std::is_same_v<T, Add>) {
          for (const auto& p : n.parts) scan_num(p, ft);
        } else if constexpr (std::is_same_v<T, MulConst>) {
          scan_num(n.arg, ft);
        }
      },
      t->node);
}

void scan(const FormulaPtr& f, Features& ft) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          std::visit(
              [&](const auto& a) {
                using A = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<A, StrEq>) {
                  scan_str(a.lhs, ft);
                  scan_str(a.rhs, ft);
                } else if constexpr (std::is_same_v<A, NumEq> || std::is_same_v<A, NumLt>) {
                  scan_num(a.lhs, ft);
                  scan_num(a.rhs, ft);
                } else if constexpr (std::is_same_v<A, NumStr>) {
                  ft.numstr = true;
                  scan_num(a.num, ft);
                  scan_str(a.str, ft);
                } else {
                  ft.pi = true;
                  scan_num(a.pow, ft);
                  scan_num(a.base, ft);
                  scan_num(a.exp, ft);
                }
              },
              n.atom.node);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          for (const auto& p : n.parts) scan(p, ft);
        } else if constexpr (std::is_same_v<T, Not>) {
          scan(n.body, ft);
        } else {
          if (n.sort == Sort::Str) ft.str = true;
          scan(n.body, ft);
        }
      },
      f->node);
}

Features features_of(const FormulaPtr& f) {
  Features ft;
  scan(f, ft);
  return ft;
}

}  // namespace

TheoryTag theory_of(const FormulaPtr& f) {
  Features ft = features_of(f);
  if (ft.pi && ft.numstr)
    throw MixedTheoryError("formula mixes numstr and pi; it fits no single theory");
  if (!ft.str && !ft.len && !ft.numstr) return TheoryTag::Tp;
  if (ft.pi) return TheoryTag::Tpi;
  return TheoryTag::Tsn;
}

bool fits_tp(const FormulaPtr& f) {
  Features ft = features_of(f);
  return !ft.str && !ft.len && !ft.numstr;
}

bool fits_tsn(const FormulaPtr& f) { return !features_of(f).pi; }

bool fits_tpi(const FormulaPtr& f) { return !features_of(f).numstr; }

bool is_quantifier_free(const FormulaPtr& f) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          return true;
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          for (const auto& p : n.parts)
            if (!is_quantifier_free(p)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Not>) {
          return is_quantifier_free(n.body);
        } else {
          return false;
        }
      },
      f->node);
}

// ---------------------------------------------------------------------------
// MulConst expansion
// ---------------------------------------------------------------------------

NumTermPtr expand_mulconst(const NumTermPtr& t) {
  return std::visit(
      [&](const auto& n) -> NumTermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumLit> || std::is_same_v<T, NumVar>) {
          return t;
        } else if constexpr (std::is_same_v<T, Len>) {
          return t;
        } else if constexpr (std::is_same_v<T, Add>) {
          std::vector<NumTermPtr> parts;
          for (const auto& p : n.parts) parts.push_back(expand_mulconst(p));
          return add(std::move(parts));
        } else {
          NumTermPtr inner = expand_mulconst(n.arg);
          if (n.factor == 0) return nlit(0);
          if (n.factor == 1) return inner;
          std::vector<NumTermPtr> copies;
          for (Nat i = 0; i < n.factor; ++i) copies.push_back(inner);
          return add(std::move(copies));
        }
      },
      t->node);
}

FormulaPtr expand_mulconst(const FormulaPtr& f) {
  return std::visit(
      [&](const auto& n) -> FormulaPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          Atom a = std::visit(
              [&](const auto& at) -> Atom {
                using A = std::decay_t<decltype(at)>;
                if constexpr (std::is_same_v<A, StrEq>) {
                  return Atom{at};
                } else if constexpr (std::is_same_v<A, NumEq>) {
                  return num_eq(expand_mulconst(at.lhs), expand_mulconst(at.rhs));
                } else if constexpr (std::is_same_v<A, NumLt>) {
                  return num_lt(expand_mulconst(at.lhs), expand_mulconst(at.rhs));
                } else if constexpr (std::is_same_v<A, NumStr>) {
                  return numstr(expand_mulconst(at.num), at.str);
                } else {
                  return pi(expand_mulconst(at.pow), expand_mulconst(at.base),
                            expand_mulconst(at.exp));
                }
              },
              n.atom.node);
          return mk_atom(std::move(a));
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<FormulaPtr> parts;
          for (const auto& p : n.parts) parts.push_back(expand_mulconst(p));
          if constexpr (std::is_same_v<T, And>)
            return mk_and(std::move(parts));
          else
            return mk_or(std::move(parts));
        } else if constexpr (std::is_same_v<T, Not>) {
          return mk_not(expand_mulconst(n.body));
        } else {
          return mk_quant(n.kind, n.var, n.sort, expand_mulconst(n.body));
        }
      },
      f->node);
}

}  // namespace strnum
