#pragma once

// Grammar-bounded pseudo-random sentences of bounded quantifier rank,
// deterministic in the seed. Used as the sentence pool for the
// equivalence-versus-truth cross checks.

#include <cstdint>
#include <string>
#include <vector>

#include "triff/msolab/formula.hpp"
#include "triff/msolab/structure.hpp"

namespace triff::msolab {

struct Vocabulary {
  int branching = 1;
  int alphabet = 0;  // 0 = no letter atoms
  std::vector<std::string> constants;
  std::vector<std::string> sets;

  static Vocabulary of(const LabStructure& s);
};

// Closed formulas of quantifier rank at most rho mentioning only the given
// vocabulary. rho = 0 requires at least one constant (otherwise no closed
// atom exists).
std::vector<MsoFormula> sample_sentences(const Vocabulary& vocabulary, int rho, int count,
                                         std::uint64_t seed);

}  // namespace triff::msolab
