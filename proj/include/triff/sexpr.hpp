#pragma once

// Minimal s-expression reader shared by the formula language and the
// SMT-LIB2 tooling. Atoms are bare tokens; ';' starts a comment that runs to
// end of line. Errors carry 1-based line/column positions.

#include <string>
#include <string_view>
#include <vector>

namespace triff {

struct SExpr {
  bool is_atom = true;
  std::string atom;          // valid when is_atom
  std::vector<SExpr> items;  // valid when !is_atom
  int line = 0;              // 1-based position of the first token
  int column = 0;

  static SExpr make_atom(std::string a) { return {true, std::move(a), {}, 0, 0}; }
  static SExpr make_list(std::vector<SExpr> xs) { return {false, {}, std::move(xs), 0, 0}; }
};

// Parses exactly one expression; trailing non-whitespace is an error.
SExpr parse_sexpr(std::string_view text);

// Parses a whole document as a sequence of expressions.
std::vector<SExpr> parse_sexpr_list(std::string_view text);

std::string render_sexpr(const SExpr& e);

}  // namespace triff
