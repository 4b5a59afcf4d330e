#include <doctest.h>

#include "helpers.hpp"
#include "strnum/corpus.hpp"
#include "strnum/solver.hpp"

using namespace strnum;
using strnum::testing::parsed;

namespace {

const ModelSpec kDefault{Universe::CanonicalA, 6, 64};

}  // namespace

TEST_SUITE("bounded solving") {
  TEST_CASE("finds the enumeration-first witness") {
    SolveResult r = solve(parsed("(numstr 3 S)"), kDefault);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.witness.at("S").str() == "11");
    CHECK(r.assignments_tried == 7);  // epsilon,0,1,00,01,10 precede 11
  }

  TEST_CASE("constraints narrow to a later witness") {
    SolveResult r = solve(parsed("(and (numstr 3 S) (= (len S) 3))"), kDefault);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.witness.at("S").str() == "011");
    CHECK(r.assignments_tried == 11);
  }

  TEST_CASE("a contradiction exhausts the space") {
    SolveResult r = solve(parsed("(= (len S) (+ (len S) 1))"), kDefault);
    CHECK(r.status == SolveStatus::UnsatWithinBounds);
    CHECK(r.assignments_tried == 127);
    CHECK(r.witness.empty());
  }

  TEST_CASE("closed formulas need one evaluation") {
    SolveResult t = solve(parsed("(= 0 0)"), kDefault);
    CHECK(t.status == SolveStatus::Sat);
    CHECK(t.witness.empty());
    CHECK(t.assignments_tried == 1);
    SolveResult f = solve(parsed("(= 0 1)"), kDefault);
    CHECK(f.status == SolveStatus::UnsatWithinBounds);
    CHECK(f.assignments_tried == 1);
  }

  TEST_CASE("mixed sorts enumerate with the first name slowest") {
    // Names sort as S, m: S varies slowest. S=epsilon fails the length
    // constraint for every m (65 tries), then S="0", m=0 succeeds.
    SolveResult r = solve(parsed("(and (= (len S) 1) (= m 0))"), kDefault);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.witness.at("S").str() == "0");
    CHECK(r.witness.at("m").num() == 0);
    CHECK(r.assignments_tried == 66);
  }

  TEST_CASE("bound variables are not search variables") {
    SolveResult r = solve(parsed("(exists ((S Str)) (numstr m S))"), kDefault);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.witness.size() == 1);
    CHECK(r.witness.at("m").num() == 0);
    CHECK(r.assignments_tried == 1);
  }

  TEST_CASE("witnesses satisfy the formula") {
    for (const char* text : {"(numstr m S)", "(and (< m 3) (= (len S) m))",
                             "(or (= S \"10\") (< 63 m))"}) {
      CAPTURE(text);
      FormulaPtr f = parsed(text);
      SolveResult r = solve(f, kDefault);
      REQUIRE(r.status == SolveStatus::Sat);
      CHECK(bounded_eval(f, r.witness, kDefault));
    }
  }

  TEST_CASE("restricted model solving") {
    ModelSpec b{Universe::RestrictedB, 4, 15};
    SolveResult r = solve(parsed("(and (numstr 3 S) (numstr m S))"), b);
    REQUIRE(r.status == SolveStatus::Sat);
    CHECK(r.witness.at("S").str() == "11");
    CHECK(r.witness.at("m").num() == 3);
    CHECK_THROWS_AS(solve(parsed("(= S epsilon)"), b), UnsupportedInModelB);
  }
}

TEST_SUITE("solver determinism and parallelism") {
  TEST_CASE("results are identical across job counts") {
    for (const char* text :
         {"(numstr 3 S)", "(and (numstr m S) (< 2 m) (< m 6))",
          "(= (len S) (+ (len S) 1))", "(and (= (len S) (len X)) (numstr 9 (concat S X)))"}) {
      CAPTURE(text);
      FormulaPtr f = parsed(text);
      SolveResult base = solve(f, kDefault, 1);
      for (unsigned jobs : {2u, 4u, 8u}) {
        SolveResult r = solve(f, kDefault, jobs);
        CHECK(r.status == base.status);
        CHECK(r.assignments_tried == base.assignments_tried);
        REQUIRE(r.witness.size() == base.witness.size());
        for (const auto& [name, value] : base.witness) {
          CHECK(show_value(r.witness.at(name)) == show_value(value));
        }
      }
    }
  }

  TEST_CASE("satisfiability is monotone in the bounds") {
    for (const char* text : {"(numstr 9 S)", "(and (numstr m S) (= (len S) 4))"}) {
      FormulaPtr f = parsed(text);
      SolveResult small = solve(f, ModelSpec{Universe::CanonicalA, 4, 16});
      SolveResult large = solve(f, kDefault);
      CAPTURE(text);
      REQUIRE(small.status == SolveStatus::Sat);
      CHECK(large.status == SolveStatus::Sat);
      // The canonical order extends, so the first witness is stable.
      CHECK(show_value(large.witness.at("S")) == show_value(small.witness.at("S")));
    }
  }
}

TEST_SUITE("explicit variable orders") {
  TEST_CASE("the order changes the walk but not satisfiability") {
    FormulaPtr f = parsed("(and (= (len S) 1) (= m 0))");
    SolveResult by_name = solve_with_order(f, kDefault, {"S", "m"});
    SolveResult reversed = solve_with_order(f, kDefault, {"m", "S"});
    REQUIRE(by_name.status == SolveStatus::Sat);
    REQUIRE(reversed.status == SolveStatus::Sat);
    CHECK(by_name.assignments_tried == 66);
    // m varies slowest: m=0 with S=epsilon fails, S="0" succeeds.
    CHECK(reversed.assignments_tried == 2);
    CHECK(show_value(by_name.witness.at("S")) == show_value(reversed.witness.at("S")));
  }

  TEST_CASE("the order must list each free variable exactly once") {
    FormulaPtr f = parsed("(and (= (len S) 1) (= m 0))");
    CHECK_THROWS_AS(solve_with_order(f, kDefault, {"S"}), std::invalid_argument);
    CHECK_THROWS_AS(solve_with_order(f, kDefault, {"S", "m", "q"}), std::invalid_argument);
    CHECK_THROWS_AS(solve_with_order(f, kDefault, {"S", "S"}), std::invalid_argument);
    CHECK_THROWS_AS(solve_with_order(f, kDefault, {"m", "q"}), std::invalid_argument);
  }
}

TEST_SUITE("differential satisfiability verdicts") {
  TEST_CASE("identical verdicts agree") {
    ModelSpec m{Universe::CanonicalA, 4, 16};
    EquisatReport both_sat = check_equisat(parsed("(= m 0)"), parsed("(= m 1)"), m);
    CHECK(both_sat.verdict == EquisatVerdict::Agree);
    CHECK(both_sat.note.find("both satisfiable") != std::string::npos);

    EquisatReport both_unsat =
        check_equisat(parsed("(< m m)"), parsed("(not (= m m))"), m);
    CHECK(both_unsat.verdict == EquisatVerdict::Agree);
    CHECK(both_unsat.note.find("both unsatisfiable") != std::string::npos);
  }

  TEST_CASE("mismatches are inconclusive unless certified") {
    ModelSpec m{Universe::CanonicalA, 4, 16};
    FormulaPtr sat = parsed("(= m 0)");
    FormulaPtr unsat = parsed("(< m m)");
    EquisatReport soft = check_equisat(sat, unsat, m);
    CHECK(soft.verdict == EquisatVerdict::Inconclusive);
    CHECK(soft.note.find("incomplete") != std::string::npos);
    EquisatReport hard = check_equisat(sat, unsat, m, /*certified=*/true);
    CHECK(hard.verdict == EquisatVerdict::Disagree);
  }
}

TEST_SUITE("solver on generated corpora") {
  TEST_CASE("parallel and sequential agree on a random corpus") {
    CorpusOptions opts;
    opts.flavor = CorpusFlavor::TpQf;
    opts.seed = 404;
    opts.count = 40;
    ModelSpec m{Universe::CanonicalA, 3, 12};
    for (const FormulaPtr& f : generate_corpus(opts)) {
      CAPTURE(print(f));
      SolveResult seq = solve(f, m, 1);
      SolveResult par = solve(f, m, 4);
      CHECK(seq.status == par.status);
      CHECK(seq.assignments_tried == par.assignments_tried);
      if (seq.status == SolveStatus::Sat) {
        CHECK(bounded_eval(f, seq.witness, m));
        CHECK(bounded_eval(f, par.witness, m));
      }
    }
  }
}
