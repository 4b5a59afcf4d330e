#include "helpers.hpp"

namespace strnum::testing {

bool naive_eval(const FormulaPtr& f, Assignment& a, const ModelSpec& m) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          return std::visit(
              [&](const auto& at) -> bool {
                using A = std::decay_t<decltype(at)>;
                if constexpr (std::is_same_v<A, StrEq>) {
                  return eval_str_term(at.lhs, a) == eval_str_term(at.rhs, a);
                } else if constexpr (std::is_same_v<A, NumEq>) {
                  return eval_num_term(at.lhs, a) == eval_num_term(at.rhs, a);
                } else if constexpr (std::is_same_v<A, NumLt>) {
                  return eval_num_term(at.lhs, a) < eval_num_term(at.rhs, a);
                } else if constexpr (std::is_same_v<A, NumStr>) {
                  return numstr_holds(eval_num_term(at.num, a), eval_str_term(at.str, a));
                } else {
                  return pi_holds(eval_num_term(at.pow, a), eval_num_term(at.base, a),
                                  eval_num_term(at.exp, a));
                }
              },
              n.atom.node);
        } else if constexpr (std::is_same_v<T, And>) {
          for (const auto& p : n.parts) {
            if (!naive_eval(p, a, m)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Or>) {
          for (const auto& p : n.parts) {
            if (naive_eval(p, a, m)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, Not>) {
          return !naive_eval(n.body, a, m);
        } else {
          bool want = n.kind == Quant::Exists;
          std::optional<Value> saved;
          if (auto it = a.find(n.var); it != a.end()) saved = it->second;
          bool result = !want;
          for (const Value& v : enumerate_domain(n.sort, m)) {
            a.insert_or_assign(n.var, v);
            if (naive_eval(n.body, a, m) == want) {
              result = want;
              break;
            }
          }
          if (saved) {
            a.insert_or_assign(n.var, *saved);
          } else {
            a.erase(n.var);
          }
          return result;
        }
      },
      f->node);
}

FormulaPtr replace_first(const FormulaPtr& f, const FormulaPtr& needle, const FormulaPtr& by) {
  if (equal(f, needle)) return by;
  return std::visit(
      [&](const auto& n) -> FormulaPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          for (std::size_t i = 0; i < n.parts.size(); ++i) {
            if (FormulaPtr sub = replace_first(n.parts[i], needle, by)) {
              std::vector<FormulaPtr> parts = n.parts;
              parts[i] = std::move(sub);
              return std::is_same_v<T, And> ? mk_and(std::move(parts)) : mk_or(std::move(parts));
            }
          }
          return nullptr;
        } else if constexpr (std::is_same_v<T, Not>) {
          if (FormulaPtr sub = replace_first(n.body, needle, by)) return mk_not(std::move(sub));
          return nullptr;
        } else if constexpr (std::is_same_v<T, Quantified>) {
          if (FormulaPtr sub = replace_first(n.body, needle, by)) {
            return mk_quant(n.kind, n.var, n.sort, std::move(sub));
          }
          return nullptr;
        } else {
          return nullptr;
        }
      },
      f->node);
}

}  // namespace strnum::testing
