#pragma once

// Emits the existence question "is there a (b,k)-hash code with m rows of
// length n" as solver input: a DIMACS CNF document (one-hot cells, monotone
// single-polarity auxiliaries) and an SMT-LIB2 document (one integer constant
// per cell). Both embed their variable map as comment lines so a model can be
// decoded from the document text alone.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "triff/code.hpp"

namespace triff {

enum class DocKind { cnf, smtlib2 };

// Solver output carried no model (UNSAT or empty).
struct NoModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decoded matrix failed re-verification: an encoder bug, never repaired.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CNF variable numbering, all 1-based and dense:
//   cells      v[i][j][s]  row-major            ids 1 .. m*n*b
//   pair aux   e[p][q][j]  pairs (p<q) lex      ids .. + C(m,2)*n
//   subset aux a[t][j]     k-subsets t lex      ids .. + C(m,k)*n
// e[p][q][j] means "rows p and q differ in column j"; a[t][j] means "subset t
// is pairwise distinct in column j". Only the implications actually used are
// emitted: (-e -v[p][j][s] -v[q][j][s]), (-a e), and per subset (OR_j a).
struct ConstraintDocument {
  DocKind kind = DocKind::cnf;
  CodeParams params;
  int m = 0;
  std::string text;

  long long num_pairs() const;    // C(m,2)
  long long num_subsets() const;  // C(m,k)
  long long num_vars() const;
  long long num_clauses() const;  // cnf only

  int cell_var(int row, int col, int sym) const;
  int pair_var(int p, int q, int col) const;
  int subset_var(int t, int col) const;
  std::string cell_name(int row, int col) const;  // smt constant name

  // k-subset of row indices with lexicographic rank t.
  std::vector<int> subset_rows(int t) const;
};

// Requires m >= k; the document size (variables plus clauses) is guarded to
// 2^31.
ConstraintDocument emit_dimacs(const CodeParams& params, int m);
ConstraintDocument emit_smtlib(const CodeParams& params, int m);

// Rebuilds a document handle from emitted text via the embedded instance
// header line.
ConstraintDocument parse_document(std::string_view text);

// Template validator: checks the document text against the declared counts
// and the embedded variable map, including injectivity and completeness.
// Throws std::runtime_error on the first mismatch.
void validate_document(const ConstraintDocument& doc);

// Decodes a solver model (CNF s/v lines or SMT-LIB get-model output) into a
// code and re-verifies it. Throws on UNSAT output, malformed models, cells
// that are not exactly-one, or a decoded code that fails verification.
Code decode_assignment(const ConstraintDocument& doc, std::string_view model_text);

// CNF assignment (index = variable id, entry 0 unused) induced by a code:
// primaries from the matrix, auxiliaries by their definitions.
std::vector<bool> assignment_from_code(const ConstraintDocument& doc, const Code& code);

// Evaluates the clauses of a DIMACS document under an assignment indexed by
// variable id. Used as a test-side oracle.
bool cnf_satisfied(std::string_view dimacs_text, const std::vector<bool>& assignment);

}  // namespace triff
