#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "strnum/eval.hpp"
#include "strnum/reductions.hpp"

using namespace strnum;
using strnum::testing::parsed;
using strnum::testing::replace_first;

TEST_SUITE("power-to-string reduction") {
  TEST_CASE("a pi atom becomes the zero-run characterization") {
    ReductionTrace trace = reduce_tp_to_tsn(parsed("(pi p x y)"));
    CHECK(equal(trace.source, parsed("(pi p x y)")));
    CHECK(alpha_equal(trace.target, parsed(
        "(exists ((z Str) (xs Str)) (and"
        " (= (concat \"0\" z) (concat z \"0\"))"
        " (= (len z) y)"
        " (numstr p (concat xs z))"
        " (numstr x xs)))")));
    REQUIRE(trace.rewrites.size() == 1);
    CHECK(equal(trace.rewrites[0].atom, parsed("(pi p x y)")));
    CHECK(trace.rewrites[0].fresh.size() == 2);
    CHECK(fits_tsn(trace.target));
  }

  TEST_CASE("the instantiated characterization has the expected witness") {
    ReductionTrace trace = reduce_tp_to_tsn(parsed("(pi 6 3 1)"));
    ModelSpec m{Universe::CanonicalA, 6, 64};
    CHECK(bounded_eval(trace.target, {}, m));
    // z = "0", xs = "11": 3 shifted one place is 6, i.e. "11" then "0".
    CHECK(bounded_eval(parsed(
        "(and (= (concat \"0\" \"0\") (concat \"0\" \"0\")) (= (len \"0\") 1)"
        " (numstr 6 (concat \"11\" \"0\")) (numstr 3 \"11\"))"), {}, m));
    // A false pi atom reduces to a bounded-false formula.
    CHECK(!bounded_eval(reduce_tp_to_tsn(parsed("(pi 6 3 2)")).target, {}, m));
  }

  TEST_CASE("negated pi is eliminated through functionality") {
    FormulaPtr neg = parsed("(not (pi p x y))");
    FormulaPtr elim = eliminate_negative_pi(neg);
    CHECK(alpha_equal(elim, parsed(
        "(exists ((q Num)) (and (pi q x y) (not (= q p))))")));
    // Positive occurrences pass through untouched — same object.
    FormulaPtr pos = parsed("(and (pi p x y) (= p 4))");
    CHECK(eliminate_negative_pi(pos).get() == pos.get());
  }

  TEST_CASE("the full pipeline clears every pi atom, negated or not") {
    ReductionTrace trace = reduce_tp_to_tsn(parsed("(not (pi p x y))"));
    CHECK(fits_tsn(trace.target));
    REQUIRE(trace.rewrites.size() == 2);  // the elimination, then rule 6
    // Every fresh name belongs to exactly one rewrite.
    std::set<std::string> seen;
    for (const Rewrite& rw : trace.rewrites) {
      for (const std::string& name : rw.fresh) {
        CAPTURE(name);
        CHECK(seen.insert(name).second);
      }
    }
    // Bounded truth is preserved on concrete instances: 6 = 3*2^1, so
    // "not pi(6,3,1)" is false and "not pi(7,3,1)" is true.
    ModelSpec m{Universe::CanonicalA, 6, 64};
    CHECK(!bounded_eval(reduce_tp_to_tsn(parsed("(not (pi 6 3 1))")).target, {}, m));
    CHECK(bounded_eval(reduce_tp_to_tsn(parsed("(not (pi 7 3 1))")).target, {}, m));
  }

  TEST_CASE("rejects formulas outside quantifier-free power arithmetic") {
    CHECK_THROWS_AS(reduce_tp_to_tsn(parsed("(numstr 3 S)")), WrongTheoryError);
    CHECK_THROWS_AS(reduce_tp_to_tsn(parsed("(= (len S) 1)")), WrongTheoryError);
    CHECK_THROWS_AS(reduce_tp_to_tsn(parsed("(exists ((p Num)) (pi p 3 1))")),
                    WrongTheoryError);
  }

  TEST_CASE("skipping negative elimination on a negated pi is an error") {
    CHECK_THROWS_AS(reduce_tp_to_tsn(parsed("(not (pi p x y))"), false), NegativePiAtomError);
    CHECK_NOTHROW(reduce_tp_to_tsn(parsed("(pi p x y)"), false));
  }

  TEST_CASE("undoing the rewrites recovers the normalized source") {
    FormulaPtr f = parsed("(or (not (pi p x 2)) (and (= p 8) (pi q 1 3)))");
    ReductionTrace trace = reduce_tp_to_tsn(f);
    FormulaPtr cur = trace.target;
    for (auto it = trace.rewrites.rbegin(); it != trace.rewrites.rend(); ++it) {
      FormulaPtr undone = replace_first(cur, it->replacement, it->atom);
      REQUIRE(undone != nullptr);
      cur = undone;
    }
    CHECK(equal(cur, to_nnf(trace.source)));
  }
}

TEST_SUITE("string-to-pi reduction") {
  TEST_CASE("numstr becomes the digit recurrence with a nonemptiness guard") {
    ReductionTrace trace = reduce_tsn_to_tpi(parsed("(numstr i s)"));
    CHECK(fits_tpi(trace.target));
    REQUIRE(trace.rewrites.size() == 1);
    const auto* conj = std::get_if<And>(&trace.target->node);
    REQUIRE(conj != nullptr);
    // First conjunct: s is nonempty.
    CHECK(alpha_equal(conj->parts[0],
                      parsed("(exists ((c Num)) (= (len s) (+ c 1)))")));
    // Second conjunct: a universally quantified matrix with 12 variables.
    const auto* q = std::get_if<Quantified>(&conj->parts[1]->node);
    REQUIRE(q != nullptr);
    CHECK(q->kind == Quant::Forall);
    CHECK(free_vars(trace.target).size() == 2);
  }

  TEST_CASE("the characterization agrees with numstr pointwise") {
    struct Case {
      unsigned long long i;
      const char* s;
    };
    const Case cases[] = {{3, "\"11\""},  {3, "\"011\""}, {3, "\"110\""}, {6, "\"110\""},
                          {0, "\"0\""},   {0, "\"00\""},  {1, "\"1\""},   {2, "\"01\""},
                          {5, "\"101\""}, {4, "\"0100\""}};
    for (const auto& c : cases) {
      std::string s_text = c.s;
      std::string raw = s_text.substr(1, s_text.size() - 2);
      FormulaPtr atom = parsed("(numstr " + std::to_string(c.i) + " " + s_text + ")");
      ReductionTrace trace = reduce_tsn_to_tpi(atom);
      ModelSpec m = sound_bounds_for_numstr_check(Nat(c.i), raw.size());
      CAPTURE(c.i);
      CAPTURE(raw);
      CHECK(bounded_eval(trace.target, {}, m) == numstr_holds(Nat(c.i), raw));
    }
  }

  TEST_CASE("the empty string satisfies no instance of the characterization") {
    for (unsigned long long i : {0ull, 1ull, 5ull}) {
      FormulaPtr atom = parsed("(numstr " + std::to_string(i) + " epsilon)");
      ReductionTrace trace = reduce_tsn_to_tpi(atom);
      ModelSpec m = sound_bounds_for_numstr_check(Nat(i), 0);
      CHECK(!bounded_eval(trace.target, {}, m));
    }
  }

  TEST_CASE("negated numstr atoms are rewritten in place") {
    ReductionTrace trace = reduce_tsn_to_tpi(parsed("(not (numstr 3 \"11\"))"));
    CHECK(fits_tpi(trace.target));
    ModelSpec m = sound_bounds_for_numstr_check(3, 2);
    CHECK(!bounded_eval(trace.target, {}, m));
  }

  TEST_CASE("undo recovers the source exactly") {
    FormulaPtr f = parsed("(exists ((s Str)) (and (numstr 3 s) (not (numstr 2 s))))");
    ReductionTrace trace = reduce_tsn_to_tpi(f);
    CHECK(trace.rewrites.size() == 2);
    FormulaPtr cur = trace.target;
    for (auto it = trace.rewrites.rbegin(); it != trace.rewrites.rend(); ++it) {
      FormulaPtr undone = replace_first(cur, it->replacement, it->atom);
      REQUIRE(undone != nullptr);
      cur = undone;
    }
    CHECK(equal(cur, trace.source));
  }

  TEST_CASE("rejects pi-bearing input") {
    CHECK_THROWS_AS(reduce_tsn_to_tpi(parsed("(pi p x y)")), WrongTheoryError);
  }

  TEST_CASE("formulas without numstr pass through unchanged") {
    FormulaPtr f = parsed("(forall ((S Str)) (= S S))");
    ReductionTrace trace = reduce_tsn_to_tpi(f);
    CHECK(trace.target.get() == f.get());
    CHECK(trace.rewrites.empty());
  }
}

TEST_SUITE("sound bounds for the numstr characterization") {
  TEST_CASE("bounds cover the overflow power and the value") {
    ModelSpec m = sound_bounds_for_numstr_check(3, 2);
    CHECK(m.universe == Universe::CanonicalA);
    CHECK(m.max_str_len == 2);
    CHECK(m.max_num == 8);  // 2^(2+1)

    CHECK(sound_bounds_for_numstr_check(100, 2).max_num == 101);  // i + 1 dominates
    CHECK(sound_bounds_for_numstr_check(0, 0).max_num == 2);      // floor of 2
    CHECK(sound_bounds_for_numstr_check(0, 4).max_num == 32);
  }
}
