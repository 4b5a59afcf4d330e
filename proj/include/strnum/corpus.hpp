#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "strnum/ast.hpp"

namespace strnum {

// What kind of formulas to generate.
//
//   Tsn   closed formulas over strings, length, linear arithmetic and
//         numstr, with quantifiers (round-trip and evaluation fodder)
//   Tpi   like Tsn but with pi instead of numstr
//   TpQf  open quantifier-free power-arithmetic formulas: at most 3 atoms
//         drawn from =, < and pi, at most 3 variables, constants below 16
//         (differential-equisatisfiability fodder)
enum class CorpusFlavor { Tsn, Tpi, TpQf };

const char* corpus_flavor_name(CorpusFlavor f);
std::optional<CorpusFlavor> corpus_flavor_from_name(std::string_view name);

struct CorpusOptions {
  CorpusFlavor flavor = CorpusFlavor::Tsn;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  // Connective/quantifier nesting budget for Tsn/Tpi (TpQf has its own
  // fixed shape limits).
  std::size_t max_depth = 6;
};

// Deterministically generates `count` well-sorted formulas. The same options
// produce byte-identical formulas on every platform: all randomness comes
// from std::mt19937_64 draws reduced by modulo, never from
// distribution objects (whose mappings vary between standard libraries).
// Every generated formula survives print -> parse with an alpha-equivalent
// AST (the generator rejects candidates that would not, deterministically).
std::vector<FormulaPtr> generate_corpus(const CorpusOptions& opts);

}  // namespace strnum
