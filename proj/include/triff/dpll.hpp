#pragma once

// Toy DPLL for test-scale instances: unit propagation plus chronological
// backtracking. Not a general-purpose solver; use an external solver for
// anything beyond a few hundred variables.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace triff {

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // nonzero literals, 1-based vars
};

CnfFormula parse_dimacs(std::string_view text);

// Complete model (index = variable id, entry 0 unused) or nullopt for UNSAT.
// Throws std::runtime_error once max_decisions branch decisions are spent.
std::optional<std::vector<bool>> dpll_solve(const CnfFormula& formula,
                                            std::uint64_t max_decisions = 1u << 22);

std::optional<std::vector<bool>> dpll_solve_dimacs(std::string_view text,
                                                   std::uint64_t max_decisions = 1u << 22);

}  // namespace triff
