#pragma once

// Asymptotic bound formulas with caller-supplied constants, and consistency
// checking of ledger entries against certificates and recomputation. The
// formulas' constants are configuration, never outputs: no calibrated value
// here reproduces a literature constant.

#include <filesystem>
#include <string>
#include <vector>

#include "triff/ledger.hpp"
#include "triff/searcher.hpp"

namespace triff {

struct BoundProfile {
  double c_upper = 2.0;     // illustrative only
  double c_improved = 1.0;  // illustrative only
  double c_lower = 1.0;     // illustrative only
};

// C * (3/2)^n
double classic_upper(int n, double c);

// C * n^(-2/5) * (3/2)^n
double improved_upper(int n, double c);

// C * (9/5)^(n/4)
double km_lower(int n, double c);

struct LedgerFinding {
  std::string key;
  std::string message;
};

struct LedgerReport {
  std::vector<LedgerFinding> findings;
  bool consistent() const { return findings.empty(); }
};

struct LedgerCheckOptions {
  std::filesystem::path base_dir = ".";  // certificate paths resolve against this
  bool recompute = false;                // re-derive exact values by oracle/search
  SearchConfig search;                   // budget for recomputation
};

// Inconsistencies are reported, not thrown: bad bounds, missing or failing
// certificates, and (when recomputation is on) exact entries that disagree
// with the oracle or the search.
LedgerReport ledger_check(const std::vector<LedgerEntry>& entries,
                          const LedgerCheckOptions& options = {});

}  // namespace triff
