#include "strnum/ast.hpp"

namespace strnum {

const char* sort_name(Sort s) { return s == Sort::Str ? "Str" : "Num"; }

namespace {

void check_binary(const std::string& v) {
  for (char c : v) {
    if (c != '0' && c != '1') {
      throw ConstructionError("string literal may contain only '0' and '1'");
    }
  }
}

void check_name(const std::string& n) {
  if (n.empty()) throw ConstructionError("variable name must be nonempty");
}

void check_nat(const Nat& n, const char* what) {
  if (n < 0) throw ConstructionError(std::string(what) + " must be a natural");
}

}  // namespace

StrTermPtr lit(std::string value) {
  check_binary(value);
  return std::make_shared<StrTerm>(StrTerm{StrLit{std::move(value)}});
}

StrTermPtr epsilon() { return lit(""); }

StrTermPtr svar(std::string name) {
  check_name(name);
  return std::make_shared<StrTerm>(StrTerm{StrVar{std::move(name)}});
}

StrTermPtr concat(std::vector<StrTermPtr> parts) {
  std::vector<StrTermPtr> flat;
  for (auto& p : parts) {
    if (!p) throw ConstructionError("null concat part");
    if (auto* c = std::get_if<Concat>(&p->node)) {
      flat.insert(flat.end(), c->parts.begin(), c->parts.end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) throw ConstructionError("concat needs at least one part");
  if (flat.size() == 1) return flat.front();
  return std::make_shared<StrTerm>(StrTerm{Concat{std::move(flat)}});
}

NumTermPtr nlit(Nat value) {
  check_nat(value, "numeric literal");
  return std::make_shared<NumTerm>(NumTerm{NumLit{std::move(value)}});
}

NumTermPtr nvar(std::string name) {
  check_name(name);
  return std::make_shared<NumTerm>(NumTerm{NumVar{std::move(name)}});
}

NumTermPtr len(StrTermPtr arg) {
  if (!arg) throw ConstructionError("null len argument");
  return std::make_shared<NumTerm>(NumTerm{Len{std::move(arg)}});
}

NumTermPtr add(std::vector<NumTermPtr> parts) {
  std::vector<NumTermPtr> flat;
  for (auto& p : parts) {
    if (!p) throw ConstructionError("null add part");
    if (auto* a = std::get_if<Add>(&p->node)) {
      flat.insert(flat.end(), a->parts.begin(), a->parts.end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) throw ConstructionError("add needs at least one part");
  if (flat.size() == 1) return flat.front();
  return std::make_shared<NumTerm>(NumTerm{Add{std::move(flat)}});
}

NumTermPtr mul(Nat factor, NumTermPtr arg) {
  check_nat(factor, "multiplier");
  if (!arg) throw ConstructionError("null mul argument");
  return std::make_shared<NumTerm>(NumTerm{MulConst{std::move(factor), std::move(arg)}});
}

Atom str_eq(StrTermPtr lhs, StrTermPtr rhs) { return Atom{StrEq{std::move(lhs), std::move(rhs)}}; }
Atom num_eq(NumTermPtr lhs, NumTermPtr rhs) { return Atom{NumEq{std::move(lhs), std::move(rhs)}}; }
Atom num_lt(NumTermPtr lhs, NumTermPtr rhs) { return Atom{NumLt{std::move(lhs), std::move(rhs)}}; }
Atom numstr(NumTermPtr n, StrTermPtr s) { return Atom{NumStr{std::move(n), std::move(s)}}; }

Atom pi(NumTermPtr p, NumTermPtr x, NumTermPtr y) {
  return Atom{PiAtom{std::move(p), std::move(x), std::move(y)}};
}

FormulaPtr mk_atom(Atom a) { return std::make_shared<Formula>(Formula{AtomF{std::move(a)}}); }

FormulaPtr mk_and(std::vector<FormulaPtr> parts) {
  for (auto& p : parts)
    if (!p) throw ConstructionError("null conjunct");
  if (parts.empty()) throw ConstructionError("and needs at least one conjunct");
  if (parts.size() == 1) return parts.front();
  return std::make_shared<Formula>(Formula{And{std::move(parts)}});
}

FormulaPtr mk_or(std::vector<FormulaPtr> parts) {
  for (auto& p : parts)
    if (!p) throw ConstructionError("null disjunct");
  if (parts.empty()) throw ConstructionError("or needs at least one disjunct");
  if (parts.size() == 1) return parts.front();
  return std::make_shared<Formula>(Formula{Or{std::move(parts)}});
}

FormulaPtr mk_not(FormulaPtr body) {
  if (!body) throw ConstructionError("null negation body");
  return std::make_shared<Formula>(Formula{Not{std::move(body)}});
}

FormulaPtr mk_quant(Quant kind, std::string var, Sort sort, FormulaPtr body) {
  check_name(var);
  if (!body) throw ConstructionError("null quantifier body");
  return std::make_shared<Formula>(Formula{Quantified{kind, std::move(var), sort, std::move(body)}});
}

FormulaPtr mk_exists(std::string var, Sort sort, FormulaPtr body) {
  return mk_quant(Quant::Exists, std::move(var), sort, std::move(body));
}

FormulaPtr mk_forall(std::string var, Sort sort, FormulaPtr body) {
  return mk_quant(Quant::Forall, std::move(var), sort, std::move(body));
}

FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return mk_or({mk_not(std::move(a)), std::move(b)});
}

FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
  return mk_and({mk_or({mk_not(a), b}), mk_or({mk_not(b), a})});
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool equal(const StrTermPtr& a, const StrTermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, StrLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, StrVar>) {
          return x.name == y.name;
        } else {
          if (x.parts.size() != y.parts.size()) return false;
          for (size_t i = 0; i < x.parts.size(); ++i)
            if (!equal(x.parts[i], y.parts[i])) return false;
          return true;
        }
      },
      a->node);
}

bool equal(const NumTermPtr& a, const NumTermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, NumLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, NumVar>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Len>) {
          return equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, Add>) {
          if (x.parts.size() != y.parts.size()) return false;
          for (size_t i = 0; i < x.parts.size(); ++i)
            if (!equal(x.parts[i], y.parts[i])) return false;
          return true;
        } else {
          return x.factor == y.factor && equal(x.arg, y.arg);
        }
      },
      a->node);
}

bool equal(const Atom& a, const Atom& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, StrEq>) {
          return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, NumEq> || std::is_same_v<T, NumLt>) {
          return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, NumStr>) {
          return equal(x.num, y.num) && equal(x.str, y.str);
        } else {
          return equal(x.pow, y.pow) && equal(x.base, y.base) && equal(x.exp, y.exp);
        }
      },
      a.node);
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, AtomF>) {
          return equal(x.atom, y.atom);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          if (x.parts.size() != y.parts.size()) return false;
          for (size_t i = 0; i < x.parts.size(); ++i)
            if (!equal(x.parts[i], y.parts[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Not>) {
          return equal(x.body, y.body);
        } else {
          return x.kind == y.kind && x.var == y.var && x.sort == y.sort && equal(x.body, y.body);
        }
      },
      a->node);
}

}  // namespace strnum
