#pragma once

// Exact existence search for (b,k)-hash codes of a target size, maximum-size
// iteration, a subset-enumeration oracle for cross-checks, and canonical
// forms under the hashing symmetry group.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>

#include "triff/code.hpp"

namespace triff {

// Cumulative reductions:
//   none              — subsets enumerated as increasing index sequences over
//                       unordered extensions (baseline; no symmetry use)
//   fix_first_row     — first row pinned to the all-zeros word
//   fix_first_row_lex — rows additionally kept strictly increasing
//   full              — second row restricted to words over {0,1}; iterating
//                       per-column swaps of the lex-second row terminates in
//                       such a form, so every code has a representative here.
//                       Applied only for b=3; other alphabets fall back to
//                       fix_first_row_lex.
enum class SymmetryLevel { none, fix_first_row, fix_first_row_lex, full };

struct SearchBudget {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
};

struct SearchStats {
  std::uint64_t nodes = 0;  // accepted partial-code extensions
  double seconds = 0.0;
  int peak_depth = 0;
};

struct SearchConfig {
  SearchBudget budget;
  SymmetryLevel symmetry = SymmetryLevel::full;
  bool deterministic = true;  // serializes subtree execution in fixed order
  int threads = 0;            // 0 = hardware concurrency
};

struct SearchVerdict {
  enum class Kind { found, exhausted, budget_exceeded };
  Kind kind = Kind::exhausted;
  std::optional<Code> certificate;  // present iff kind == found, re-verified
  SearchStats stats;
};

// DFS over candidate words in lexicographic order; a partial code is extended
// only when every new k-subset stays hashed (incremental difference-mask
// intersection), and a branch is cut when the remaining candidates cannot
// reach m. Parallel work splits on the choice of the second codeword.
// Exhausted is only reported when the tree was fully explored under the
// configured reductions. Requires m >= 1 and b^n <= 2^20.
SearchVerdict search_exact(const CodeParams& params, int m, const SearchConfig& config = {});

struct MaxSizeResult {
  enum class Status { exact, bounded };
  int lower = 0;  // witnessed by certificate when positive
  int upper = 0;  // equal to lower when exact, b^n when bounded by budget
  Status status = Status::exact;
  std::optional<Code> certificate;
  SearchStats stats;  // aggregated over all probes
};

// Calls search_exact for m = 1, 2, ... until a size is exhausted (exact) or
// the budget runs out (bounded).
MaxSizeResult max_size(const CodeParams& params, const SearchConfig& config = {});

// Exact maximum by enumeration over all subsets of the full word table,
// independent of the search heuristics. Guarded to b^n <= 12.
std::pair<int, Code> brute_force_max(const CodeParams& params);

// Canonical representative under row permutations, coordinate permutations,
// and per-coordinate alphabet bijections: the code minimizing the sorted-row
// encoding over the whole group, enumerated through a base-row/column chain.
// Guarded to m * n! * (b-1)!^n <= 2^28.
Code canonicalize(const Code& code);

// Applies a coordinate permutation followed by per-coordinate alphabet
// bijections. coord_perm has length n; relabel holds one b-entry bijection
// per coordinate (empty span = identity everywhere).
Code transform_code(const Code& code, std::span<const int> coord_perm,
                    std::span<const std::vector<int>> relabel);

}  // namespace triff
