#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "strnum/ast_ops.hpp"
#include "strnum/corpus.hpp"

using namespace strnum;
using strnum::testing::parsed;

namespace {

std::size_t count_atoms(const FormulaPtr& f) {
  if (std::holds_alternative<AtomF>(f->node)) return 1;
  if (const auto* n = std::get_if<Not>(&f->node)) return count_atoms(n->body);
  if (const auto* a = std::get_if<And>(&f->node)) {
    std::size_t total = 0;
    for (const auto& p : a->parts) total += count_atoms(p);
    return total;
  }
  if (const auto* o = std::get_if<Or>(&f->node)) {
    std::size_t total = 0;
    for (const auto& p : o->parts) total += count_atoms(p);
    return total;
  }
  return count_atoms(std::get<Quantified>(f->node).body);
}

bool constants_below(const NumTermPtr& t, const Nat& limit) {
  if (const auto* c = std::get_if<NumLit>(&t->node)) return c->value < limit;
  if (const auto* a = std::get_if<Add>(&t->node)) {
    for (const auto& s : a->parts)
      if (!constants_below(s, limit)) return false;
    return true;
  }
  if (const auto* m = std::get_if<MulConst>(&t->node))
    return m->factor < limit && constants_below(m->arg, limit);
  return true;  // variables and len carry no numerals
}

bool constants_below(const FormulaPtr& f, const Nat& limit) {
  if (const auto* at = std::get_if<AtomF>(&f->node)) {
    if (const auto* eq = std::get_if<NumEq>(&at->atom.node)) {
      return constants_below(eq->lhs, limit) && constants_below(eq->rhs, limit);
    }
    if (const auto* lt = std::get_if<NumLt>(&at->atom.node)) {
      return constants_below(lt->lhs, limit) && constants_below(lt->rhs, limit);
    }
    if (const auto* p = std::get_if<PiAtom>(&at->atom.node)) {
      return constants_below(p->pow, limit) && constants_below(p->base, limit) &&
             constants_below(p->exp, limit);
    }
    return true;
  }
  if (const auto* n = std::get_if<Not>(&f->node)) return constants_below(n->body, limit);
  if (const auto* a = std::get_if<And>(&f->node)) {
    for (const auto& p : a->parts)
      if (!constants_below(p, limit)) return false;
    return true;
  }
  if (const auto* o = std::get_if<Or>(&f->node)) {
    for (const auto& p : o->parts)
      if (!constants_below(p, limit)) return false;
    return true;
  }
  return constants_below(std::get<Quantified>(f->node).body, limit);
}

}  // namespace

TEST_SUITE("corpus generation") {
  TEST_CASE("flavor names round-trip") {
    for (CorpusFlavor f : {CorpusFlavor::Tsn, CorpusFlavor::Tpi, CorpusFlavor::TpQf}) {
      auto back = corpus_flavor_from_name(corpus_flavor_name(f));
      REQUIRE(back.has_value());
      CHECK(*back == f);
    }
    CHECK(corpus_flavor_from_name("tsn").has_value());
    CHECK_FALSE(corpus_flavor_from_name("nope").has_value());
  }

  TEST_CASE("generation is deterministic") {
    CorpusOptions opts;
    opts.seed = 7;
    opts.count = 60;
    for (CorpusFlavor f : {CorpusFlavor::Tsn, CorpusFlavor::Tpi, CorpusFlavor::TpQf}) {
      opts.flavor = f;
      std::vector<FormulaPtr> a = generate_corpus(opts);
      std::vector<FormulaPtr> b = generate_corpus(opts);
      REQUIRE(a.size() == 60);
      REQUIRE(b.size() == 60);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(equal(a[i], b[i]));
        CHECK(print(a[i]) == print(b[i]));
      }
    }
  }

  TEST_CASE("different seeds give different corpora") {
    CorpusOptions a, b;
    a.seed = 1;
    b.seed = 2;
    a.count = b.count = 25;
    std::vector<FormulaPtr> ga = generate_corpus(a);
    std::vector<FormulaPtr> gb = generate_corpus(b);
    std::size_t same = 0;
    for (std::size_t i = 0; i < ga.size(); ++i)
      if (equal(ga[i], gb[i])) ++same;
    CHECK(same < ga.size());
  }

  TEST_CASE("string-theory formulas are closed and in the right fragment") {
    CorpusOptions opts;
    opts.flavor = CorpusFlavor::Tsn;
    opts.seed = 11;
    opts.count = 120;
    for (const FormulaPtr& f : generate_corpus(opts)) {
      CAPTURE(print(f));
      CHECK(free_vars(f).empty());
      CHECK(fits_tsn(f));
      CHECK_NOTHROW(well_sorted(f));
    }
  }

  TEST_CASE("hybrid-theory formulas are closed and use pi, never numstr") {
    CorpusOptions opts;
    opts.flavor = CorpusFlavor::Tpi;
    opts.seed = 12;
    opts.count = 120;
    for (const FormulaPtr& f : generate_corpus(opts)) {
      CAPTURE(print(f));
      CHECK(free_vars(f).empty());
      CHECK(fits_tpi(f));
      CHECK(print(f).find("numstr") == std::string::npos);
    }
  }

  TEST_CASE("power-arithmetic formulas are open, flat and small") {
    CorpusOptions opts;
    opts.flavor = CorpusFlavor::TpQf;
    opts.seed = 13;
    opts.count = 150;
    const std::set<std::string> allowed{"m", "n", "k"};
    for (const FormulaPtr& f : generate_corpus(opts)) {
      CAPTURE(print(f));
      CHECK(fits_tp(f));
      CHECK(is_quantifier_free(f));
      CHECK(count_atoms(f) <= 3);
      CHECK(constants_below(f, Nat(16)));
      for (const auto& [name, sort] : free_vars(f)) {
        CHECK(allowed.count(name) == 1);
        CHECK(sort == Sort::Num);
      }
    }
  }

  TEST_CASE("every formula survives print then parse") {
    for (CorpusFlavor flavor : {CorpusFlavor::Tsn, CorpusFlavor::Tpi, CorpusFlavor::TpQf}) {
      CorpusOptions opts;
      opts.flavor = flavor;
      opts.seed = 21;
      opts.count = 70;
      for (const FormulaPtr& f : generate_corpus(opts)) {
        CAPTURE(print(f));
        FormulaPtr back = parsed(print(f));
        CHECK(alpha_equal(back, f));
        CHECK(print(back) == print(f));
      }
    }
  }

  TEST_CASE("count and depth are respected") {
    CorpusOptions opts;
    opts.count = 0;
    CHECK(generate_corpus(opts).empty());
    opts.count = 5;
    opts.max_depth = 1;
    opts.seed = 3;
    CHECK(generate_corpus(opts).size() == 5);
  }
}
