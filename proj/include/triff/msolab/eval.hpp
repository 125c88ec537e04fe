#pragma once

// Direct Tarskian evaluation. Set quantifiers enumerate every subset of the
// domain, so evaluation is guarded by domain size.

#include <cstdint>
#include <map>
#include <string>

#include "triff/msolab/formula.hpp"
#include "triff/msolab/structure.hpp"

namespace triff::msolab {

struct Assignment {
  std::map<std::string, int> points;
  std::map<std::string, std::uint64_t> sets;
};

// Element names resolve binder-first, then structure constants, then the
// assignment; set names likewise against named sets. Unresolved names and
// out-of-vocabulary atoms (unknown successor index, letter on a structure
// without letters) raise std::invalid_argument / std::runtime_error.
// Domains larger than domain_guard raise std::domain_error.
bool evaluate(const LabStructure& s, const MsoFormula& f, const Assignment& assignment = {},
              int domain_guard = 14);

}  // namespace triff::msolab
