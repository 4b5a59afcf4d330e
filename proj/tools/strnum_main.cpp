// strnum — command-line front end for the bounded string/number toolkit.
//
// Subcommands: check, solve, reduce, axioms, demo-incompleteness, gen-corpus.
// Exit codes are part of the contract:
//   0  success / Sat / holds
//   1  unsat within bounds / expected property false / counterexample
//   2  usage, parse, sort, or theory error
//   3  internal error or bounds unfit for the request
//
// With --format json the command emits exactly one JSON document on stdout;
// every formula inside it is printed in surface syntax and re-parses.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "strnum/ast_ops.hpp"
#include "strnum/corpus.hpp"
#include "strnum/eval.hpp"
#include "strnum/gamma.hpp"
#include "strnum/model.hpp"
#include "strnum/reductions.hpp"
#include "strnum/solver.hpp"
#include "strnum/syntax.hpp"

namespace {

using nlohmann::json;
using namespace strnum;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Options {
  std::string command;
  std::string model = "a";
  std::size_t max_str_len = 6;
  std::uint64_t max_num = 64;
  std::string format = "text";
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  std::string file;
  std::string expr;
  std::string direction;
  bool verify = false;
  std::string filter;
  std::string axioms_file;
  std::string flavor = "tsn";
  std::size_t count = 100;
  std::size_t depth = 6;

  bool json_mode() const { return format == "json"; }
  ModelSpec spec() const {
    return ModelSpec{model == "b" ? Universe::RestrictedB : Universe::CanonicalA, max_str_len,
                     Nat(max_num)};
  }
};

json config_json(const Options& o) {
  return json{{"model", o.model},
              {"max_str_len", o.max_str_len},
              {"max_num", o.max_num},
              {"seed", o.seed},
              {"jobs", o.jobs}};
}

json base_doc(const Options& o) {
  return json{{"schema", "strnum/1"}, {"command", o.command}, {"config", config_json(o)}};
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int fail(const Options& o, int code, const std::string& message,
         const ParseError* parse_err = nullptr) {
  if (o.json_mode()) {
    json doc = base_doc(o);
    json err{{"message", message}};
    if (parse_err) {
      err["line"] = parse_err->span.line;
      err["col"] = parse_err->span.col;
      if (!parse_err->expected.empty()) err["expected"] = parse_err->expected;
    }
    doc["error"] = std::move(err);
    emit(doc);
  } else {
    std::cerr << "error: " << message << "\n";
  }
  return code;
}

// ---------------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------------

bool load_input(const Options& o, std::string& out, std::string& err) {
  if (!o.expr.empty() && !o.file.empty()) {
    err = "give a file or -e EXPR, not both";
    return false;
  }
  if (!o.expr.empty()) {
    out = o.expr;
    return true;
  }
  if (o.file.empty()) {
    err = "no input: give a file or -e EXPR";
    return false;
  }
  std::ifstream in(o.file, std::ios::binary);
  if (!in) {
    err = "cannot open file: " + o.file;
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

std::string assignment_text(const Assignment& a) {
  std::string out;
  for (const auto& [name, value] : a) {
    if (!out.empty()) out += ", ";
    out += name + " = " + show_value(value);
  }
  return out;
}

json assignment_json(const Assignment& a) {
  json out = json::object();
  for (const auto& [name, value] : a) out[name] = show_value(value);
  return out;
}

json bounds_json(const ModelSpec& m) {
  return json{{"model", m.universe == Universe::RestrictedB ? "b" : "a"},
              {"max_str_len", m.max_str_len},
              {"max_num", m.max_num.convert_to<std::uint64_t>()}};
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int cmd_check(const Options& o) {
  std::string text, err;
  if (!load_input(o, text, err)) return fail(o, kUsage, err);
  ParseResult r = parse(text);
  if (!r) return fail(o, kUsage, r.error->render(), &*r.error);
  TheoryTag tag = theory_of(r.formula);  // MixedTheoryError -> usage
  auto free = free_vars(r.formula);
  if (o.json_mode()) {
    json doc = base_doc(o);
    json fv = json::array();
    for (const auto& [name, sort] : free) {
      fv.push_back({{"name", name}, {"sort", sort == Sort::Str ? "Str" : "Num"}});
    }
    doc["result"] = {{"formula", print(r.formula)}, {"theory", theory_name(tag)},
                     {"free_variables", std::move(fv)}};
    emit(doc);
  } else {
    std::cout << "theory: " << theory_name(tag) << "\n";
    std::cout << "free variables:";
    if (free.empty()) std::cout << " none";
    for (const auto& [name, sort] : free) {
      std::cout << " " << name << ":" << (sort == Sort::Str ? "Str" : "Num");
    }
    std::cout << "\n" << "formula: " << print(r.formula) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int cmd_solve(const Options& o) {
  std::string text, err;
  if (!load_input(o, text, err)) return fail(o, kUsage, err);
  ParseResult r = parse(text);
  if (!r) return fail(o, kUsage, r.error->render(), &*r.error);
  theory_of(r.formula);  // reject mixed numstr/pi inputs up front
  ModelSpec m = o.spec();
  SolveResult res = solve(r.formula, m, o.jobs);
  bool sat = res.status == SolveStatus::Sat;
  if (o.json_mode()) {
    json doc = base_doc(o);
    json result{{"status", sat ? "sat" : "unsat-within-bounds"},
                {"assignments_tried", res.assignments_tried},
                {"bounds", bounds_json(m)}};
    if (sat) result["witness"] = assignment_json(res.witness);
    doc["result"] = std::move(result);
    emit(doc);
  } else if (sat) {
    std::cout << "sat\n";
    for (const auto& [name, value] : res.witness) {
      std::cout << "  " << name << " = " << show_value(value) << "\n";
    }
    std::cout << "(" << res.assignments_tried << " assignments tried)\n";
  } else {
    std::cout << "unsat within bounds (max_str_len=" << m.max_str_len
              << ", max_num=" << m.max_num << ")\n";
    std::cout << "(" << res.assignments_tried << " assignments tried)\n";
  }
  return sat ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

const char* verdict_name(EquisatVerdict v) {
  switch (v) {
    case EquisatVerdict::Agree: return "agree";
    case EquisatVerdict::Inconclusive: return "inconclusive";
    case EquisatVerdict::Disagree: return "disagree";
  }
  return "?";
}

int cmd_reduce(const Options& o) {
  std::string text, err;
  if (!load_input(o, text, err)) return fail(o, kUsage, err);
  ParseResult r = parse(text);
  if (!r) return fail(o, kUsage, r.error->render(), &*r.error);
  ReductionTrace trace = o.direction == "tp-to-tsn" ? reduce_tp_to_tsn(r.formula)
                                                    : reduce_tsn_to_tpi(r.formula);
  std::optional<EquisatReport> report;
  if (o.verify) report = check_equisat(trace.source, trace.target, o.spec(), false, o.jobs);

  if (o.json_mode()) {
    json doc = base_doc(o);
    json rewrites = json::array();
    for (const Rewrite& rw : trace.rewrites) {
      rewrites.push_back({{"atom", print(rw.atom)},
                          {"fresh", rw.fresh},
                          {"replacement", print(rw.replacement)},
                          {"note", rw.note}});
    }
    json result{{"direction", o.direction},
                {"source", print(trace.source)},
                {"target", print(trace.target)},
                {"rewrites", std::move(rewrites)}};
    if (report) {
      result["equisat"] = {{"verdict", verdict_name(report->verdict)},
                           {"source_status",
                            report->source.status == SolveStatus::Sat ? "sat" : "unsat-within-bounds"},
                           {"target_status",
                            report->target.status == SolveStatus::Sat ? "sat" : "unsat-within-bounds"},
                           {"note", report->note}};
    }
    doc["result"] = std::move(result);
    emit(doc);
  } else {
    std::cout << print(trace.target) << "\n";
    if (report) {
      std::cout << "equisat: " << verdict_name(report->verdict) << " (" << report->note << ")\n";
    }
  }
  if (report && report->verdict == EquisatVerdict::Disagree) return kNegative;
  return kOk;
}

// ---------------------------------------------------------------------------
// axioms
// ---------------------------------------------------------------------------

int cmd_axioms(const Options& o) {
  std::vector<Axiom> axioms;
  if (!o.axioms_file.empty()) {
    std::ifstream in(o.axioms_file, std::ios::binary);
    if (!in) return fail(o, kUsage, "cannot open axioms file: " + o.axioms_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = parse_axioms_file(buf.str());
    if (auto* perr = std::get_if<ParseError>(&parsed)) {
      return fail(o, kUsage, perr->render(), perr);
    }
    axioms = std::move(std::get<std::vector<Axiom>>(parsed));
  } else {
    axioms = gamma();
  }
  if (!o.filter.empty()) {
    std::vector<Axiom> kept;
    for (const Axiom& ax : axioms) {
      if (ax.id.rfind(o.filter, 0) == 0) kept.push_back(ax);
    }
    if (kept.empty()) {
      return fail(o, kUsage, "filter '" + o.filter + "' matches no axiom id");
    }
    axioms = std::move(kept);
  }

  ModelSpec m = o.spec();
  std::vector<AxiomCheckOutcome> outcomes = check_axioms(axioms, m);  // B -> usage error
  std::size_t counterexamples = 0;
  for (const auto& oc : outcomes) {
    if (oc.kind == CheckKind::Counterexample) ++counterexamples;
  }

  if (o.json_mode()) {
    json doc = base_doc(o);
    json list = json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      json item{{"id", outcomes[i].axiom_id},
                {"group", axiom_group_name(axioms[i].group)},
                {"kind", check_kind_name(outcomes[i].kind)}};
      if (!outcomes[i].assignment.empty()) item["assignment"] = assignment_json(outcomes[i].assignment);
      if (!outcomes[i].reason.empty()) item["reason"] = outcomes[i].reason;
      list.push_back(std::move(item));
    }
    doc["result"] = {{"bounds", bounds_json(m)},
                     {"outcomes", std::move(list)},
                     {"counterexamples", counterexamples}};
    emit(doc);
  } else {
    std::cout << "checking " << axioms.size() << " axioms in model " << o.model
              << " (max_str_len=" << m.max_str_len << ", max_num=" << m.max_num << ")\n";
    for (const auto& oc : outcomes) {
      std::cout << "  " << oc.axiom_id;
      for (std::size_t pad = oc.axiom_id.size(); pad < 12; ++pad) std::cout << ' ';
      std::cout << check_kind_name(oc.kind);
      if (!oc.assignment.empty()) std::cout << "  " << assignment_text(oc.assignment);
      if (!oc.reason.empty()) std::cout << "  (" << oc.reason << ")";
      std::cout << "\n";
    }
    std::cout << counterexamples << " counterexample(s)\n";
  }
  return counterexamples == 0 ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// demo-incompleteness
// ---------------------------------------------------------------------------

int cmd_demo(const Options& o) {
  IncompletenessReport rep = incompleteness_demo(o.spec());  // BoundsTooSmallError -> 3
  if (o.json_mode()) {
    json doc = base_doc(o);
    doc["result"] = {{"sentence", rep.sentence},
                     {"effective_max_str_len", rep.effective_len},
                     {"effective_max_num", rep.effective_max.convert_to<std::uint64_t>()},
                     {"holds_in_canonical", rep.holds_in_a},
                     {"holds_in_restricted", rep.holds_in_b},
                     {"duplicate_value", rep.duplicate_value.convert_to<std::uint64_t>()},
                     {"representations", json::array({rep.rep_short, rep.rep_long})},
                     {"pair_verified", rep.pair_verified},
                     {"canonical_representation_count", rep.a_representation_count},
                     {"restricted_bijection_verified", rep.b_bijection_verified},
                     {"split_observed", rep.split_observed},
                     {"note", rep.note}};
    emit(doc);
  } else {
    std::cout << "sentence J (base-2 representation is a bijection):\n  " << rep.sentence << "\n";
    std::cout << "effective bounds: max_str_len=" << rep.effective_len
              << ", max_num=" << rep.effective_max << "\n";
    std::cout << "canonical model: J is " << (rep.holds_in_a ? "TRUE" : "FALSE")
              << " within bounds\n";
    std::cout << "  value " << rep.duplicate_value << " is represented by both \"" << rep.rep_short
              << "\" and \"" << rep.rep_long << "\" (" << rep.a_representation_count
              << " representations within bounds)\n";
    std::cout << "restricted model: J is " << (rep.holds_in_b ? "TRUE" : "FALSE")
              << " within bounds\n";
    std::cout << "  every value 0.." << rep.effective_max << " has exactly one representation: "
              << (rep.b_bijection_verified ? "verified" : "NOT verified") << "\n";
    if (rep.split_observed) {
      std::cout << "the models disagree on J at these bounds, so they are not elementarily\n"
                   "equivalent; an axiom system sound for both models leaves J undecided\n";
    } else {
      std::cout << "expected split not observed at these bounds\n";
    }
  }
  return rep.split_observed ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// gen-corpus
// ---------------------------------------------------------------------------

int cmd_gen_corpus(const Options& o) {
  auto flavor = corpus_flavor_from_name(o.flavor);
  if (!flavor) return fail(o, kUsage, "unknown flavor: " + o.flavor);
  CorpusOptions copts;
  copts.flavor = *flavor;
  copts.count = o.count;
  copts.seed = o.seed;
  copts.max_depth = o.depth;
  std::vector<FormulaPtr> corpus = generate_corpus(copts);
  if (o.json_mode()) {
    json doc = base_doc(o);
    json formulas = json::array();
    for (const auto& f : corpus) formulas.push_back(print(f));
    doc["result"] = {{"flavor", o.flavor}, {"count", corpus.size()},
                     {"formulas", std::move(formulas)}};
    emit(doc);
  } else {
    for (const auto& f : corpus) std::cout << print(f) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"bounded reasoning for binary strings, length arithmetic and base-2 conversion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "strnum 1.0.0");
  app.add_option("--model", o.model, "model: a (all strings) or b (no leading zeros)")
      ->check(CLI::IsMember({"a", "b"}));
  app.add_option("--max-str-len", o.max_str_len, "string length bound (default 6)");
  app.add_option("--max-num", o.max_num, "numeric bound (default 64)");
  app.add_option("--format", o.format, "output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "random seed for corpus generation");
  app.add_option("--jobs", o.jobs, "parallel workers for the solver");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "input file with one formula");
    sub->add_option("-e,--expr", o.expr, "inline formula text");
  };

  CLI::App* check = app.add_subcommand("check", "parse and sort-check a formula");
  add_input(check);
  CLI::App* solve = app.add_subcommand("solve", "bounded satisfiability search");
  add_input(solve);
  CLI::App* reduce = app.add_subcommand("reduce", "rewrite between the theories");
  add_input(reduce);
  reduce->add_option("--direction", o.direction, "tp-to-tsn or tsn-to-tpi")
      ->required()
      ->check(CLI::IsMember({"tp-to-tsn", "tsn-to-tpi"}));
  reduce->add_flag("--verify", o.verify, "run the differential satisfiability check");
  CLI::App* axioms = app.add_subcommand("axioms", "sweep the axiom system within bounds");
  axioms->add_option("--filter", o.filter, "only axioms whose id starts with this prefix");
  axioms->add_option("--axioms-file", o.axioms_file, "check (axiom ID <formula>) forms from a file");
  CLI::App* demo =
      app.add_subcommand("demo-incompleteness", "evaluate sentence J in both models");
  CLI::App* gen = app.add_subcommand("gen-corpus", "emit a deterministic formula corpus");
  gen->add_option("--flavor", o.flavor, "tsn, tpi or tp-qf")
      ->check(CLI::IsMember({"tsn", "tpi", "tp-qf"}));
  gen->add_option("--count", o.count, "number of formulas (default 100)");
  gen->add_option("--depth", o.depth, "nesting budget for tsn/tpi (default 6)");

  for (CLI::App* sub : {check, solve, reduce, axioms, demo, gen}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (check->parsed()) { o.command = "check"; return cmd_check(o); }
    if (solve->parsed()) { o.command = "solve"; return cmd_solve(o); }
    if (reduce->parsed()) { o.command = "reduce"; return cmd_reduce(o); }
    if (axioms->parsed()) { o.command = "axioms"; return cmd_axioms(o); }
    if (demo->parsed()) { o.command = "demo-incompleteness"; return cmd_demo(o); }
    if (gen->parsed()) { o.command = "gen-corpus"; return cmd_gen_corpus(o); }
    std::cerr << "error: no command\n";
    return kUsage;
  } catch (const MixedTheoryError& e) {
    return fail(o, kUsage, e.what());
  } catch (const WrongTheoryError& e) {
    return fail(o, kUsage, e.what());
  } catch (const UnsupportedInModelB& e) {
    return fail(o, kUsage, e.what());
  } catch (const SortError& e) {
    return fail(o, kUsage, e.what());
  } catch (const BoundsTooSmallError& e) {
    return fail(o, kInternal, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(o, kUsage, e.what());
  } catch (const std::exception& e) {
    return fail(o, kInternal, std::string("internal error: ") + e.what());
  }
}
