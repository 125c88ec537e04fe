#pragma once

// Monadic second-order formulas over the structure vocabulary: successor
// atoms, set membership, equality, letter tests, the usual connectives, and
// quantifiers over elements and over sets. Concrete syntax is s-expressions:
//   (and f g ...) (or f g ...) (not f) (implies f g) (iff f g)
//   (exists1 x f) (forall1 x f) (existsS X f) (forallS X f)
//   (succ a x y) (in x X) (= x y) (letter a x)

#include <string>
#include <string_view>
#include <vector>

namespace triff::msolab {

enum class FormKind {
  conj,
  disj,
  neg,
  implies,
  iff,
  exists1,
  forall1,
  existsS,
  forallS,
  succ,
  in,
  eq,
  letter
};

struct MsoFormula {
  FormKind kind = FormKind::eq;
  std::vector<MsoFormula> children;  // connective/quantifier bodies
  std::string var;                   // quantifier binder
  std::string term_a, term_b;        // atom slots
  int index = -1;                    // succ branch or letter symbol

  int quantifier_rank() const;
};

// Parses and resolves quantifier scopes: a name bound as an element variable
// cannot appear in a set slot and vice versa; free names get their sort
// inferred and must be used consistently. Errors carry positions.
MsoFormula parse_formula(std::string_view text);

std::string render_formula(const MsoFormula& f);

struct FreeVars {
  std::vector<std::string> points;
  std::vector<std::string> sets;
};

FreeVars free_variables(const MsoFormula& f);

}  // namespace triff::msolab
