#include "strnum/model.hpp"

#include <limits>

#include "strnum/ast_ops.hpp"

namespace strnum {

const char* universe_name(Universe u) { return u == Universe::CanonicalA ? "a" : "b"; }

std::string show_value(const Value& v) {
  if (v.sort() == Sort::Num) return v.num().str();
  if (v.str().empty()) return "epsilon";
  return "\"" + v.str() + "\"";
}

// ---------------------------------------------------------------------------
// Interpreted predicates
// ---------------------------------------------------------------------------

Nat str_value(const std::string& s) {
  Nat v = 0;
  for (char c : s) {
    v <<= 1;
    if (c == '1') v += 1;
  }
  return v;
}

std::string minimal_rep(const Nat& i) {
  if (i == 0) return "0";
  std::string out;
  Nat v = i;
  while (v > 0) {
    out.push_back((v & 1) != 0 ? '1' : '0');
    v >>= 1;
  }
  return std::string(out.rbegin(), out.rend());
}

bool numstr_holds(const Nat& i, const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c != '0' && c != '1') return false;
  }
  return str_value(s) == i;
}

bool pi_holds(const Nat& p, const Nat& x, const Nat& y) {
  if (x == 0) return p == 0;
  if (p == 0) return false;
  // x >= 1, so p = x * 2^y requires 2^y <= p, i.e. y <= msb(p).
  std::size_t pbits = boost::multiprecision::msb(p);
  if (y > pbits) return false;
  unsigned long long shift = y.convert_to<unsigned long long>();
  return p == (x << shift);
}

bool in_b_domain(const std::string& s) {
  if (s.empty()) return false;
  return s == "0" || s[0] != '0';
}

// ---------------------------------------------------------------------------
// Term evaluation
// ---------------------------------------------------------------------------

std::string eval_str_term(const StrTermPtr& t, const Assignment& a) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrLit>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, StrVar>) {
          auto it = a.find(n.name);
          if (it == a.end()) throw UnboundVariableError(n.name);
          if (it->second.sort() != Sort::Str)
            throw SortError("variable '" + n.name + "' is bound to a number, not a string");
          return it->second.str();
        } else {
          std::string out;
          for (const auto& p : n.parts) out += eval_str_term(p, a);
          return out;
        }
      },
      t->node);
}

Nat eval_num_term(const NumTermPtr& t, const Assignment& a) {
  return std::visit(
      [&](const auto& n) -> Nat {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumLit>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, NumVar>) {
          auto it = a.find(n.name);
          if (it == a.end()) throw UnboundVariableError(n.name);
          if (it->second.sort() != Sort::Num)
            throw SortError("variable '" + n.name + "' is bound to a string, not a number");
          return it->second.num();
        } else if constexpr (std::is_same_v<T, Len>) {
          return Nat(eval_str_term(n.arg, a).size());
        } else if constexpr (std::is_same_v<T, Add>) {
          Nat sum = 0;
          for (const auto& p : n.parts) sum += eval_num_term(p, a);
          return sum;
        } else {
          return n.factor * eval_num_term(n.arg, a);
        }
      },
      t->node);
}

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

namespace {

constexpr unsigned long long kSaturated = std::numeric_limits<unsigned long long>::max();

unsigned long long domain_size(Sort sort, Universe u, std::size_t max_len, const Nat& max_num) {
  if (sort == Sort::Num) {
    Nat count = max_num + 1;
    if (count > Nat(kSaturated)) return kSaturated;
    return count.convert_to<unsigned long long>();
  }
  if (u == Universe::CanonicalA) {
    // 1 + 2 + 4 + ... + 2^L = 2^(L+1) - 1
    if (max_len >= 63) return kSaturated;
    return (1ull << (max_len + 1)) - 1;
  }
  // Restricted: "0", "1", and for each length k >= 2 the 2^(k-1) strings
  // starting with '1'; total 2^L for L >= 1.
  if (max_len == 0) return 0;
  if (max_len >= 64) return kSaturated;
  return 1ull << max_len;
}

std::size_t top_bit(unsigned long long v) {
  std::size_t b = 0;
  while (v >>= 1) ++b;
  return b;
}

}  // namespace

std::string padded_binary(unsigned long long value, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t i = width; i-- > 0 && value > 0;) {
    out[i] = (value & 1) ? '1' : '0';
    value >>= 1;
  }
  return out;
}

Domain::Domain(Sort sort, const ModelSpec& m)
    : sort_(sort),
      universe_(m.universe),
      max_len_(m.max_str_len),
      max_num_(m.max_num),
      size_(domain_size(sort, m.universe, m.max_str_len, m.max_num)) {}

Value Domain::at(unsigned long long idx) const {
  if (sort_ == Sort::Num) {
    return Value{Nat(idx)};
  }
  if (universe_ == Universe::CanonicalA) {
    if (idx == 0) return Value{std::string()};
    // Strings of length k occupy indices [2^k - 1, 2^(k+1) - 1).
    std::size_t k = top_bit(idx + 1);
    unsigned long long offset = idx - ((1ull << k) - 1);
    return Value{padded_binary(offset, k)};
  }
  if (idx == 0) return Value{std::string("0")};
  if (idx == 1) return Value{std::string("1")};
  // Length-k strings (k >= 2) occupy indices [2^(k-1), 2^k).
  std::size_t k = top_bit(idx) + 1;
  unsigned long long offset = idx - (1ull << (k - 1));
  return Value{std::string("1") + padded_binary(offset, k - 1)};
}

std::vector<Value> enumerate_domain(Sort sort, const ModelSpec& m) {
  Domain d(sort, m);
  if (d.size() > 10'000'000ull) {
    throw std::length_error("domain too large to materialize");
  }
  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(d.size()));
  for (unsigned long long i = 0; i < d.size(); ++i) out.push_back(d.at(i));
  return out;
}

// ---------------------------------------------------------------------------
// Model validation
// ---------------------------------------------------------------------------

namespace {

void validate_str(const StrTermPtr& t) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrLit>) {
          if (!in_b_domain(n.value)) {
            throw UnsupportedInModelB(
                n.value.empty()
                    ? std::string("the empty string is not in the restricted universe")
                    : "literal \"" + n.value + "\" is not in the restricted universe");
          }
        } else if constexpr (std::is_same_v<T, Concat>) {
          throw UnsupportedInModelB("concatenation has no interpretation in the restricted model");
        }
      },
      t->node);
}

void validate_num(const NumTermPtr& t) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Len>) {
          validate_str(n.arg);
        } else if constexpr (std::is_same_v<T, Add>) {
          for (const auto& p : n.parts) validate_num(p);
        } else if constexpr (std::is_same_v<T, MulConst>) {
          validate_num(n.arg);
        }
      },
      t->node);
}

void validate_formula(const FormulaPtr& f) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          std::visit(
              [&](const auto& a) {
                using A = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<A, StrEq>) {
                  validate_str(a.lhs);
                  validate_str(a.rhs);
                } else if constexpr (std::is_same_v<A, NumEq> || std::is_same_v<A, NumLt>) {
                  validate_num(a.lhs);
                  validate_num(a.rhs);
                } else if constexpr (std::is_same_v<A, NumStr>) {
                  validate_num(a.num);
                  validate_str(a.str);
                } else {
                  validate_num(a.pow);
                  validate_num(a.base);
                  validate_num(a.exp);
                }
              },
              n.atom.node);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          for (const auto& p : n.parts) validate_formula(p);
        } else if constexpr (std::is_same_v<T, Not>) {
          validate_formula(n.body);
        } else {
          validate_formula(n.body);
        }
      },
      f->node);
}

}  // namespace

void validate_for_model(const FormulaPtr& f, const ModelSpec& m) {
  if (m.universe == Universe::CanonicalA) return;
  validate_formula(f);
}

}  // namespace strnum
