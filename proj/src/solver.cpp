#include "strnum/solver.hpp"

#include <atomic>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace strnum {

namespace {

constexpr unsigned long long kMaxU64 = std::numeric_limits<unsigned long long>::max();

unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kMaxU64 / b) return kMaxU64;
  return a * b;
}

struct SearchSpace {
  std::vector<std::string> names;
  std::vector<Domain> domains;
  unsigned long long total = 1;
};

void digits_of(unsigned long long idx, const std::vector<Domain>& doms,
               std::vector<unsigned long long>& out) {
  out.assign(doms.size(), 0);
  for (std::size_t i = doms.size(); i-- > 0;) {
    unsigned long long sz = doms[i].size();
    out[i] = idx % sz;
    idx /= sz;
  }
}

Assignment assignment_at(const SearchSpace& sp, unsigned long long idx) {
  std::vector<unsigned long long> digits;
  digits_of(idx, sp.domains, digits);
  Assignment a;
  for (std::size_t i = 0; i < sp.names.size(); ++i) {
    a.insert_or_assign(sp.names[i], sp.domains[i].at(digits[i]));
  }
  return a;
}

void atomic_min(std::atomic<unsigned long long>& a, unsigned long long v) {
  unsigned long long cur = a.load(std::memory_order_relaxed);
  while (v < cur && !a.compare_exchange_weak(cur, v)) {
  }
}

// Scans global indices [lo, hi) in ascending order; reports the first
// satisfying index into *best and returns it. Gives up early once another
// worker has found a witness below the current position.
std::optional<unsigned long long> scan_range(const FormulaPtr& f, const ModelSpec& m,
                                             const SearchSpace& sp, unsigned long long lo,
                                             unsigned long long hi,
                                             std::atomic<unsigned long long>* best) {
  if (lo >= hi) return std::nullopt;
  Evaluator ev(m);
  std::vector<unsigned long long> digits;
  digits_of(lo, sp.domains, digits);
  Assignment a;
  for (std::size_t i = 0; i < sp.names.size(); ++i) {
    a.insert_or_assign(sp.names[i], sp.domains[i].at(digits[i]));
  }
  for (unsigned long long idx = lo; idx < hi; ++idx) {
    if (best && (idx & 0xff) == 0 && best->load(std::memory_order_relaxed) < idx) {
      return std::nullopt;
    }
    if (idx != lo) {
      // Odometer step: the last variable varies fastest.
      std::size_t i = digits.size();
      while (i-- > 0) {
        if (++digits[i] < sp.domains[i].size()) {
          a.insert_or_assign(sp.names[i], sp.domains[i].at(digits[i]));
          break;
        }
        digits[i] = 0;
        a.insert_or_assign(sp.names[i], sp.domains[i].at(0));
      }
    }
    if (ev.eval(f, a)) {
      if (best) atomic_min(*best, idx);
      return idx;
    }
  }
  return std::nullopt;
}

}  // namespace

SolveResult solve_with_order(const FormulaPtr& f, const ModelSpec& m,
                             const std::vector<std::string>& order, unsigned jobs) {
  validate_for_model(f, m);
  auto fv = free_vars(f);
  if (order.size() != fv.size()) {
    throw std::invalid_argument("variable order must name exactly the free variables");
  }
  SearchSpace sp;
  std::set<std::string> seen;
  for (const auto& name : order) {
    auto it = fv.find(name);
    if (it == fv.end()) {
      throw std::invalid_argument("'" + name + "' is not a free variable of the formula");
    }
    if (!seen.insert(name).second) {
      throw std::invalid_argument("variable order lists '" + name + "' more than once");
    }
    sp.names.push_back(name);
    sp.domains.emplace_back(it->second, m);
  }
  sp.total = 1;
  for (const auto& d : sp.domains) sp.total = saturating_mul(sp.total, d.size());

  SolveResult result;
  result.bounds = m;
  if (sp.total == 0) {
    result.status = SolveStatus::UnsatWithinBounds;
    result.assignments_tried = 0;
    return result;
  }

  std::optional<unsigned long long> found;
  if (jobs <= 1 || sp.total < 2048) {
    found = scan_range(f, m, sp, 0, sp.total, nullptr);
  } else {
    unsigned long long workers = std::min<unsigned long long>(std::min<unsigned>(jobs, 64u), sp.total);
    std::atomic<unsigned long long> best{kMaxU64};
    std::vector<std::optional<unsigned long long>> hits(workers);
    std::vector<std::thread> threads;
    unsigned long long chunk = sp.total / workers, rem = sp.total % workers;
    unsigned long long lo = 0;
    for (unsigned long long t = 0; t < workers; ++t) {
      unsigned long long hi = lo + chunk + (t < rem ? 1 : 0);
      threads.emplace_back([&, t, lo, hi] { hits[t] = scan_range(f, m, sp, lo, hi, &best); });
      lo = hi;
    }
    for (auto& th : threads) th.join();
    for (const auto& h : hits) {
      if (h && (!found || *h < *found)) found = *h;
    }
  }

  if (found) {
    result.status = SolveStatus::Sat;
    result.witness = assignment_at(sp, *found);
    result.assignments_tried = *found == kMaxU64 ? kMaxU64 : *found + 1;
    if (!bounded_eval(f, result.witness, m)) {
      throw std::logic_error("internal error: witness does not satisfy the formula");
    }
  } else {
    result.status = SolveStatus::UnsatWithinBounds;
    result.assignments_tried = sp.total;
  }
  return result;
}

SolveResult solve(const FormulaPtr& f, const ModelSpec& m, unsigned jobs) {
  std::vector<std::string> order;
  for (const auto& [name, sort] : free_vars(f)) order.push_back(name);
  return solve_with_order(f, m, order, jobs);
}

EquisatReport check_equisat(const FormulaPtr& source, const FormulaPtr& target,
                            const ModelSpec& m, bool certified, unsigned jobs) {
  EquisatReport report;
  report.source = solve(source, m, jobs);
  report.target = solve(target, m, jobs);
  bool src_sat = report.source.status == SolveStatus::Sat;
  bool tgt_sat = report.target.status == SolveStatus::Sat;
  if (src_sat == tgt_sat) {
    report.verdict = EquisatVerdict::Agree;
    report.note = src_sat ? "both satisfiable within bounds" : "both unsatisfiable within bounds";
  } else {
    report.verdict = certified ? EquisatVerdict::Disagree : EquisatVerdict::Inconclusive;
    report.note = std::string(src_sat ? "source" : "target") +
                  " is satisfiable within bounds but the other side is not";
    if (!certified) {
      report.note += "; bounded search is incomplete, so this is not a certified disagreement";
    }
  }
  return report;
}

}  // namespace strnum
