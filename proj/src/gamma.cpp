#include "strnum/gamma.hpp"

#include <map>

namespace strnum {

namespace {

struct AxiomEntry {
  const char* id;
  AxiomGroup group;
  const char* text;
  const char* note;
};

// clang-format off
const AxiomEntry kAxiomTable[] = {
    {"ARITH-01", AxiomGroup::Arithmetic,
     "(not (= 0 1))",
     "zero and one are distinct"},
    {"ARITH-02", AxiomGroup::Arithmetic,
     "(forall ((x Num)) (not (= 0 (+ x 1))))",
     "zero is not a successor"},
    {"ARITH-03", AxiomGroup::Arithmetic,
     "(forall ((x Num)) (exists ((y Num)) (implies (not (= x 0)) (= (+ y 1) x))))",
     "every nonzero number is a successor"},
    {"ARITH-04", AxiomGroup::Arithmetic,
     "(forall ((x Num) (y Num)) (not (and (< x y) (< y (+ x 1)))))",
     "nothing sits strictly between a number and its successor"},
    {"ARITH-05", AxiomGroup::Arithmetic,
     "(forall ((x Num) (y Num)) (= (+ x y) (+ y x)))",
     "addition is commutative"},
    {"ARITH-06", AxiomGroup::Arithmetic,
     "(forall ((x Num) (y Num) (z Num)) (implies (= (+ x y) (+ x z)) (= y z)))",
     "addition cancels on the left"},
    {"ARITH-07", AxiomGroup::Arithmetic,
     "(forall ((x Num) (y Num)) (implies (= (+ x 1) (+ y 1)) (= x y)))",
     "the successor is injective"},
    {"ARITH-08", AxiomGroup::Arithmetic,
     "(forall ((x Num)) (= (+ x 0) x))",
     "zero is neutral for addition"},
    {"ARITH-09", AxiomGroup::Arithmetic,
     "(forall ((x Num) (y Num)) (= (+ x (+ y 1)) (+ (+ x y) 1)))",
     "addition associates with the successor step"},
    {"ARITH-10", AxiomGroup::Arithmetic,
     "(forall ((x Num) (y Num)) (exists ((c Num)) (implies (< x y) "
     "(and (not (= c 0)) (= (+ x c) y)))))",
     "strict order yields a nonzero difference"},
    {"ARITH-11", AxiomGroup::Arithmetic,
     "(exists ((c Num)) (forall ((x Num) (y Num)) (implies "
     "(and (not (= c 0)) (= (+ x c) y)) (< x y))))",
     "a nonzero difference witnesses strict order"},

    {"EQ-12", AxiomGroup::Equality,
     "(forall ((A Str) (B Str)) (implies (= A B) (= (len A) (len B))))",
     "equal strings have equal length"},
    {"EQ-REFL-N", AxiomGroup::Equality,
     "(forall ((x Num)) (= x x))",
     "numeric equality is reflexive"},
    {"EQ-SYM-N", AxiomGroup::Equality,
     "(forall ((x Num) (y Num)) (implies (= x y) (= y x)))",
     "numeric equality is symmetric"},
    {"EQ-TRANS-N", AxiomGroup::Equality,
     "(forall ((x Num) (y Num) (z Num)) (implies (and (= x y) (= y z)) (= x z)))",
     "numeric equality is transitive"},
    {"EQ-REFL-S", AxiomGroup::Equality,
     "(forall ((A Str)) (= A A))",
     "string equality is reflexive"},
    {"EQ-SYM-S", AxiomGroup::Equality,
     "(forall ((A Str) (B Str)) (implies (= A B) (= B A)))",
     "string equality is symmetric"},
    {"EQ-TRANS-S", AxiomGroup::Equality,
     "(forall ((A Str) (B Str) (C Str)) (implies (and (= A B) (= B C)) (= A C)))",
     "string equality is transitive"},

    {"CONCAT-13", AxiomGroup::Concatenation,
     "(forall ((x Str)) (and (= (concat x epsilon) x) (= (concat epsilon x) x)))",
     "the empty string is neutral on both sides"},
    {"CONCAT-14", AxiomGroup::Concatenation,
     "(forall ((x Str) (y Str) (z Str)) "
     "(= (concat x (concat y z)) (concat (concat x y) z)))",
     "concatenation is associative"},

    {"LEN-15", AxiomGroup::Length,
     "(forall ((x Str)) (iff (= (len x) 0) (= x epsilon)))",
     "only the empty string has length zero"},
    {"LEN-16", AxiomGroup::Length,
     "(forall ((x Str)) (implies (= (len x) 1) (or (= x \"0\") (= x \"1\"))))",
     "a one-character string is one of the alphabet characters"},
    {"LEN-17", AxiomGroup::Length,
     "(forall ((x Str) (y Str)) (= (len (concat x y)) (+ (len x) (len y))))",
     "length distributes over concatenation as a sum"},
    {"LEN-18", AxiomGroup::Length,
     "(and (= (len \"0\") 1) (= (len \"1\") 1))",
     "each alphabet character has length one"},

    {"NUMSTR-18", AxiomGroup::Numstr,
     "(forall ((i Num)) (not (numstr i epsilon)))",
     "the empty string represents nothing"},
    {"NUMSTR-19", AxiomGroup::Numstr,
     "(numstr 0 \"0\")",
     "the character 0 represents zero"},
    {"NUMSTR-20", AxiomGroup::Numstr,
     "(numstr 1 \"1\")",
     "the character 1 represents one"},
    {"NUMSTR-21", AxiomGroup::Numstr,
     "(forall ((s Str) (i Num)) (implies "
     "(and (= (len s) 1) (not (= s \"0\")) (not (= s \"1\"))) (not (numstr i s))))",
     "no other one-character string represents anything "
     "(vacuous over the two-character alphabet)"},
    {"NUMSTR-22", AxiomGroup::Numstr,
     "(forall ((i Num) (x Str) (z Str)) (implies "
     "(and (numstr i x) (= (concat \"0\" z) (concat z \"0\"))) (numstr i (concat z x))))",
     "prepending a zero run preserves the represented value"},
    {"NUMSTR-23", AxiomGroup::Numstr,
     "(forall ((i Num) (x Str) (z Str)) (implies "
     "(and (numstr i (concat z x)) (= (concat \"0\" z) (concat z \"0\")) "
     "(not (= z epsilon)) (not (= x epsilon))) (numstr i x)))",
     "stripping a zero run preserves the represented value"},
    {"NUMSTR-24", AxiomGroup::Numstr,
     "(forall ((x Num) (y Str) (z Str) (u Num) (v Num)) (implies "
     "(and (numstr u y) (numstr v z)) (iff (numstr x (concat y z)) "
     "(exists ((zr Str) (xh Num)) (and (= (concat \"0\" zr) (concat zr \"0\")) "
     "(= (len zr) (len z)) (numstr xh (concat y zr)) (= x (+ xh v)))))))",
     "a concatenation represents the left value shifted past the right "
     "string plus the right value (arithmetic reading of digit juxtaposition)"},
    {"NUMSTR-25", AxiomGroup::Numstr,
     "(forall ((x Num) (y Num) (z Str)) (exists ((u Str) (v Str) (w Str)) "
     "(implies (numstr (+ x y) z) (and (= (len u) x) (= (len v) y) "
     "(= w (concat u v)) (numstr (len w) z)))))",
     "a represented sum splits as the length of a two-part concatenation"},
    {"NUMSTR-26", AxiomGroup::Numstr,
     "(exists ((u Str) (v Str) (w Str)) (forall ((x Num) (y Num) (z Str)) "
     "(implies (and (= (len u) x) (= (len v) y) (= w (concat u v)) "
     "(numstr (len w) z)) (numstr (+ x y) z))))",
     "a two-part concatenation length transfers to a represented sum"},
};
// clang-format on

AxiomGroup group_from_id(const std::string& id) {
  if (id.rfind("ARITH", 0) == 0) return AxiomGroup::Arithmetic;
  if (id.rfind("EQ", 0) == 0) return AxiomGroup::Equality;
  if (id.rfind("CONCAT", 0) == 0) return AxiomGroup::Concatenation;
  if (id.rfind("LEN", 0) == 0) return AxiomGroup::Length;
  if (id.rfind("NUMSTR", 0) == 0) return AxiomGroup::Numstr;
  return AxiomGroup::Arithmetic;
}

FormulaPtr parse_statement(const char* id, const char* text) {
  ParseResult r = parse(text);
  if (!r) {
    throw std::logic_error(std::string("internal error: axiom ") + id +
                           " does not parse: " + r.error->render());
  }
  if (!free_vars(r.formula).empty()) {
    throw std::logic_error(std::string("internal error: axiom ") + id + " is not closed");
  }
  return r.formula;
}

struct PeeledBlock {
  Quant kind = Quant::Forall;
  std::vector<std::pair<std::string, Sort>> vars;
  FormulaPtr body;
  bool has_block = false;
};

PeeledBlock peel_leading_block(const FormulaPtr& f) {
  PeeledBlock out;
  const auto* q = std::get_if<Quantified>(&f->node);
  if (!q) {
    out.body = f;
    return out;
  }
  out.kind = q->kind;
  out.has_block = true;
  FormulaPtr body = f;
  while (const auto* qq = std::get_if<Quantified>(&body->node)) {
    if (qq->kind != out.kind) break;
    out.vars.emplace_back(qq->var, qq->sort);
    body = qq->body;
  }
  out.body = body;
  return out;
}

// Enumerates the product of the variables' domains in canonical order (first
// variable slowest); stops when fn returns true. Returns whether it stopped.
template <typename Fn>
bool scan_product(const std::vector<std::pair<std::string, Sort>>& vars,
                  const std::vector<Domain>& doms, Assignment& a, Fn&& fn) {
  for (const auto& d : doms) {
    if (d.empty()) return false;
  }
  std::vector<unsigned long long> digits(doms.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    a.insert_or_assign(vars[i].first, doms[i].at(0));
  }
  while (true) {
    if (fn(a)) return true;
    std::size_t i = digits.size();
    bool carried_out = true;
    while (i-- > 0) {
      if (++digits[i] < doms[i].size()) {
        a.insert_or_assign(vars[i].first, doms[i].at(digits[i]));
        carried_out = false;
        break;
      }
      digits[i] = 0;
      a.insert_or_assign(vars[i].first, doms[i].at(0));
    }
    if (carried_out) return false;
  }
}

}  // namespace

const char* axiom_group_name(AxiomGroup g) {
  switch (g) {
    case AxiomGroup::Arithmetic: return "arithmetic";
    case AxiomGroup::Equality: return "equality";
    case AxiomGroup::Concatenation: return "concatenation";
    case AxiomGroup::Length: return "length";
    case AxiomGroup::Numstr: return "numstr";
  }
  return "?";
}

const char* check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::HoldsWithinBounds: return "holds-within-bounds";
    case CheckKind::Counterexample: return "counterexample";
    case CheckKind::WitnessFound: return "witness-found";
    case CheckKind::NotFullyCheckable: return "not-fully-checkable";
  }
  return "?";
}

const std::vector<Axiom>& gamma() {
  static const std::vector<Axiom> axioms = [] {
    std::vector<Axiom> out;
    for (const AxiomEntry& e : kAxiomTable) {
      out.push_back(Axiom{e.id, e.group, parse_statement(e.id, e.text), e.note});
    }
    return out;
  }();
  return axioms;
}

std::variant<std::vector<Axiom>, ParseError> parse_axioms_file(std::string_view text) {
  auto rd = read_sexprs(text);
  if (auto* err = std::get_if<ParseError>(&rd)) return *err;
  std::vector<Axiom> out;
  for (const SExp& form : std::get<std::vector<SExp>>(rd)) {
    ParseError e;
    e.span = form.span;
    e.expected = {"(axiom ID <formula>)"};
    if (form.kind != SExp::Kind::List || form.items.size() != 3 ||
        form.items[0].kind != SExp::Kind::Symbol || form.items[0].text != "axiom" ||
        form.items[1].kind != SExp::Kind::Symbol) {
      e.message = "expected an (axiom ID <formula>) form";
      return e;
    }
    auto built = build_formula(form.items[2]);
    if (auto* err = std::get_if<ParseError>(&built)) return *err;
    Axiom ax;
    ax.id = form.items[1].text;
    ax.group = group_from_id(ax.id);
    ax.statement = std::get<FormulaPtr>(built);
    if (!free_vars(ax.statement).empty()) {
      e.message = "axiom '" + ax.id + "' is not a closed formula";
      return e;
    }
    out.push_back(std::move(ax));
  }
  return out;
}

EvalOptions gamma_eval_options(const ModelSpec& m) {
  std::size_t num_cap =
      m.max_num > 64 ? std::size_t{64} : m.max_num.convert_to<std::size_t>();
  EvalOptions o;
  o.guided_str_len_cap = std::max(m.max_str_len, num_cap);
  return o;
}

AxiomCheckOutcome check_axiom(const Axiom& ax, const ModelSpec& m) {
  if (m.universe != Universe::CanonicalA) {
    throw UnsupportedInModelB(
        "axiom checking is defined over the canonical model only; the restricted model does not "
        "interpret epsilon or concatenation");
  }
  AxiomCheckOutcome out;
  out.axiom_id = ax.id;
  out.bounds = m;
  Evaluator ev(m, gamma_eval_options(m));

  if (ax.id == "NUMSTR-24") {
    bool reading = ev.eval(ax.statement, {});
    out.kind = CheckKind::NotFullyCheckable;
    out.reason =
        std::string(
            "the statement's displayed right-hand side juxtaposes digit sequences, which is "
            "meta-notation rather than a formula of the language; its arithmetic reading (the "
            "left value shifted past the right string, plus the right value) ") +
        (reading ? "holds within bounds" : "FAILS within bounds");
    return out;
  }

  PeeledBlock blk = peel_leading_block(ax.statement);
  if (!blk.has_block) {
    if (ev.eval(ax.statement, {})) {
      out.kind = CheckKind::HoldsWithinBounds;
    } else {
      out.kind = CheckKind::Counterexample;
      out.reason = "the closed statement evaluates to false within bounds";
    }
    return out;
  }

  std::vector<Domain> doms;
  doms.reserve(blk.vars.size());
  for (const auto& [name, sort] : blk.vars) doms.emplace_back(sort, m);

  Assignment a;
  if (blk.kind == Quant::Forall) {
    bool failed = scan_product(blk.vars, doms, a, [&](const Assignment& t) {
      return !ev.eval(blk.body, t);
    });
    if (failed) {
      out.kind = CheckKind::Counterexample;
      out.assignment = a;
    } else {
      out.kind = CheckKind::HoldsWithinBounds;
    }
  } else {
    bool found = scan_product(blk.vars, doms, a, [&](const Assignment& t) {
      return ev.eval(blk.body, t);
    });
    if (found) {
      out.kind = CheckKind::WitnessFound;
      out.assignment = a;
    } else {
      out.kind = CheckKind::Counterexample;
      out.reason = "no witness within bounds for the leading existential block";
    }
  }
  return out;
}

std::vector<AxiomCheckOutcome> check_axioms(const std::vector<Axiom>& axioms, const ModelSpec& m) {
  std::vector<AxiomCheckOutcome> out;
  out.reserve(axioms.size());
  for (const Axiom& ax : axioms) out.push_back(check_axiom(ax, m));
  return out;
}

FormulaPtr sentence_j() {
  static const FormulaPtr j = parse_statement(
      "sentence-j",
      "(and"
      " (forall ((i Num)) (exists ((s Str)) (and (numstr i s)"
      "   (forall ((t Str)) (implies (numstr i t) (= s t))))))"
      " (forall ((s Str)) (exists ((i Num)) (and (numstr i s)"
      "   (forall ((j Num)) (implies (numstr j s) (= i j)))))))");
  return j;
}

IncompletenessReport incompleteness_demo(const ModelSpec& bounds) {
  IncompletenessReport r;
  r.requested = bounds;
  std::size_t num_len =
      bounds.max_num == 0
          ? 0
          : static_cast<std::size_t>(boost::multiprecision::msb(Nat(bounds.max_num + 1)));
  r.effective_len = std::min(bounds.max_str_len, num_len);
  if (r.effective_len < 4) {
    throw BoundsTooSmallError(
        "bounds too small for the demonstration: the duplicate-representation pair needs "
        "min(max_str_len, floor(log2(max_num + 1))) >= 4");
  }
  if (r.effective_len > 16) {
    throw std::invalid_argument(
        "demonstration bounds are capped at effective string length 16; sweeping larger domains "
        "is impractical");
  }
  r.effective_max = (Nat(1) << r.effective_len) - 1;

  FormulaPtr j = sentence_j();
  r.sentence = print(j);
  ModelSpec spec_a{Universe::CanonicalA, r.effective_len, r.effective_max};
  ModelSpec spec_b{Universe::RestrictedB, r.effective_len, r.effective_max};
  r.holds_in_a = bounded_eval(j, {}, spec_a);
  r.holds_in_b = bounded_eval(j, {}, spec_b);

  r.duplicate_value = 3;
  r.rep_short = "11";
  r.rep_long = "0011";
  r.pair_verified =
      numstr_holds(r.duplicate_value, r.rep_short) && numstr_holds(r.duplicate_value, r.rep_long);

  for (const Value& v : enumerate_domain(Sort::Str, spec_a)) {
    if (numstr_holds(r.duplicate_value, v.str())) ++r.a_representation_count;
  }
  {
    std::vector<unsigned> counts(r.effective_max.convert_to<std::size_t>() + 1, 0);
    for (const Value& v : enumerate_domain(Sort::Str, spec_b)) {
      ++counts[str_value(v.str()).convert_to<std::size_t>()];
    }
    r.b_bijection_verified = true;
    for (unsigned c : counts) {
      if (c != 1) {
        r.b_bijection_verified = false;
        break;
      }
    }
  }

  r.split_observed = !r.holds_in_a && r.holds_in_b && r.pair_verified;
  r.note = r.split_observed
               ? "the sentence distinguishes the canonical model from the restricted model "
                 "within bounds, so the two models are not elementarily equivalent"
               : "the expected split (false in the canonical model, true in the restricted "
                 "model) was not observed at these bounds";
  return r;
}

}  // namespace strnum
