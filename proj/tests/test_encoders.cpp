#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "triff/dpll.hpp"
#include "triff/encoders.hpp"
#include "triff/extsolver.hpp"
#include "triff/searcher.hpp"
#include "triff/smt_eval.hpp"

using namespace triff;

namespace {

Code make_code(const CodeParams& p, const std::vector<std::string>& digits) {
  std::vector<Word> words;
  for (const auto& d : digits) words.push_back(Word::parse(p, d));
  return Code(p, std::move(words));
}

}  // namespace

TEST_CASE("variable counts follow the construction") {
  const ConstraintDocument small = emit_dimacs(CodeParams{3, 3, 1}, 3);
  CHECK(small.num_vars() == 13);  // 9 cells + 3 pair + 1 subset

  const ConstraintDocument big = emit_dimacs(CodeParams{3, 3, 5}, 11);
  CHECK(big.num_vars() == 1265);  // 165 + 275 + 825
  CHECK(big.num_subsets() == 165);
  CHECK(big.text.find("p cnf 1265 ") != std::string::npos);

  CHECK_THROWS_AS(emit_dimacs(CodeParams{3, 3, 1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(emit_smtlib(CodeParams{3, 3, 1}, 2), std::invalid_argument);
}

TEST_CASE("emitted documents validate and reparse") {
  for (const auto& doc : {emit_dimacs(CodeParams{3, 3, 2}, 4), emit_dimacs(CodeParams{2, 2, 3}, 3)}) {
    CHECK_NOTHROW(validate_document(doc));
    const ConstraintDocument again = parse_document(doc.text);
    CHECK(again.kind == doc.kind);
    CHECK(again.params == doc.params);
    CHECK(again.m == doc.m);
    CHECK_NOTHROW(validate_document(again));
  }
  const ConstraintDocument smt = emit_smtlib(CodeParams{3, 3, 1}, 3);
  CHECK_NOTHROW(validate_document(smt));
  CHECK_NOTHROW(validate_document(parse_document(smt.text)));

  // three cells, three domain assertions, one subset assertion
  CHECK(smt.num_subsets() == 1);
  std::istringstream in(smt.text);
  std::string line;
  int declares = 0, asserts = 0;
  while (std::getline(in, line)) {
    if (line.rfind("(declare-const", 0) == 0) ++declares;
    if (line.rfind("(assert", 0) == 0) ++asserts;
  }
  CHECK(declares == 3);
  CHECK(asserts == 4);

  // tampered header count must be rejected
  ConstraintDocument bad = emit_dimacs(CodeParams{3, 3, 1}, 3);
  const auto pos = bad.text.find("p cnf 13 25");
  bad.text.replace(pos, 11, "p cnf 13 26");
  CHECK_THROWS_AS(validate_document(bad), std::runtime_error);
}

TEST_CASE("header counts match the body for random instances") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int b = 2 + static_cast<int>(rng() % 3);
    const int k = 2 + static_cast<int>(rng() % (b - 1));
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = k + static_cast<int>(rng() % 4);
    const ConstraintDocument doc = emit_dimacs(CodeParams{b, k, n}, m);
    CHECK_NOTHROW(validate_document(doc));
    const ConstraintDocument smt = emit_smtlib(CodeParams{b, k, n}, m);
    CHECK_NOTHROW(validate_document(smt));
  }
}

TEST_CASE("assignments from codes satisfy the clauses") {
  const CodeParams p{3, 3, 2};
  const ConstraintDocument doc = emit_dimacs(p, 4);
  const Code code = make_code(p, {"00", "01", "10", "22"});
  // not a hash code; the encoding must notice: some cover clause fails
  const bool valid_code = !first_violation(code).has_value();
  const auto assignment = assignment_from_code(doc, code);
  CHECK(cnf_satisfied(doc.text, assignment) == valid_code);

  const Code good = make_code(p, {"00", "01", "12", "22"});
  REQUIRE_FALSE(first_violation(good).has_value());
  CHECK(cnf_satisfied(doc.text, assignment_from_code(doc, good)));
}

TEST_CASE("decode cnf models") {
  const CodeParams one{3, 3, 1};
  const ConstraintDocument doc = emit_dimacs(one, 3);

  // hand-built model: rows 0,1,2 get symbols 0,1,2
  std::string model = "s SATISFIABLE\nv";
  const Code expected = make_code(one, {"0", "1", "2"});
  const auto bits = assignment_from_code(doc, expected);
  for (long long v = 1; v <= doc.num_vars(); ++v)
    model += (bits[static_cast<size_t>(v)] ? " " : " -") + std::to_string(v);
  model += " 0\n";
  CHECK(decode_assignment(doc, model) == expected);

  CHECK_THROWS_AS(decode_assignment(doc, "s UNSATISFIABLE\n"), NoModelError);
  CHECK_THROWS_AS(decode_assignment(doc, "c nothing here\n"), NoModelError);

  // a cell with two symbols on is rejected loudly
  std::string broken = "v 1 2 -3 4 -5 -6 7 -8 -9 10 11 12 13 0\n";
  CHECK_THROWS_AS(decode_assignment(doc, broken), std::runtime_error);
}

TEST_CASE("solve-decode round trip through the toy dpll") {
  const CodeParams one{3, 3, 1};
  const ConstraintDocument doc = emit_dimacs(one, 3);
  const auto model = dpll_solve_dimacs(doc.text);
  REQUIRE(model.has_value());
  std::string text = "s SATISFIABLE\nv";
  for (long long v = 1; v <= doc.num_vars(); ++v)
    text += ((*model)[static_cast<size_t>(v)] ? " " : " -") + std::to_string(v);
  text += " 0\n";
  const Code decoded = decode_assignment(doc, text);
  // any model decodes to a permutation of the three symbols
  CHECK(decoded == make_code(one, {"0", "1", "2"}));
}

TEST_CASE("searcher certificates survive the encode-decode loop") {
  const CodeParams p{3, 3, 2};
  SearchConfig cfg;
  cfg.deterministic = true;
  const SearchVerdict v = search_exact(p, 4, cfg);
  REQUIRE(v.kind == SearchVerdict::Kind::found);
  const ConstraintDocument doc = emit_dimacs(p, 4);
  const auto bits = assignment_from_code(doc, *v.certificate);
  CHECK(cnf_satisfied(doc.text, bits));
  std::string text = "v";
  for (long long var = 1; var <= doc.num_vars(); ++var)
    text += (bits[static_cast<size_t>(var)] ? " " : " -") + std::to_string(var);
  text += " 0\n";
  CHECK(decode_assignment(doc, text) == *v.certificate);
}

TEST_CASE("smt model finder agrees and its models decode") {
  const CodeParams one{3, 3, 1};
  const ConstraintDocument doc = emit_smtlib(one, 3);
  const auto model = smt_find_model(doc.text);
  REQUIRE(model.has_value());
  const Code decoded = decode_assignment(doc, render_smt_model(*model));
  CHECK_FALSE(first_violation(decoded).has_value());

  CHECK_FALSE(smt_find_model(emit_smtlib(one, 4).text).has_value());
  CHECK_THROWS_AS(decode_assignment(emit_smtlib(one, 4), "unsat\n"), NoModelError);
}

TEST_CASE("equisatisfiability across cnf, smt, and native search") {
  SearchConfig cfg;
  cfg.deterministic = true;
  for (int n = 1; n <= 2; ++n)
    for (int m = 3; m <= 5; ++m) {
      const CodeParams p{3, 3, n};
      const bool native = search_exact(p, m, cfg).kind == SearchVerdict::Kind::found;

      const ConstraintDocument cnf = emit_dimacs(p, m);
      const auto cnf_model = dpll_solve_dimacs(cnf.text);
      CHECK(cnf_model.has_value() == native);
      if (cnf_model) {
        std::string text = "v";
        for (long long v = 1; v <= cnf.num_vars(); ++v)
          text += ((*cnf_model)[static_cast<size_t>(v)] ? " " : " -") + std::to_string(v);
        text += " 0\n";
        const Code decoded = decode_assignment(cnf, text);
        CHECK_FALSE(first_violation(decoded).has_value());
        CHECK(decoded.size() == m);
      }

      const ConstraintDocument smt = emit_smtlib(p, m);
      const auto smt_model = smt_find_model(smt.text);
      CHECK(smt_model.has_value() == native);
      if (smt_model) {
        const Code decoded = decode_assignment(smt, render_smt_model(*smt_model));
        CHECK_FALSE(first_violation(decoded).has_value());
      }
    }
}

// Selected by the solver_harness ctest entry, which points TRIFF_SAT_SOLVER
// at the bundled toy solver; skipped silently when the variable is unset.
TEST_SUITE("extsolver") {
  TEST_CASE("external solver harness round trip") {
    const char* solver = std::getenv("TRIFF_SAT_SOLVER");
    if (!solver) return;
    const auto dir = std::filesystem::temp_directory_path() / "triff-extsolver-test";
    std::filesystem::create_directories(dir);

    const CodeParams one{3, 3, 1};
    const ConstraintDocument sat_doc = emit_dimacs(one, 3);
    const auto sat_path = dir / "sat.cnf";
    std::ofstream(sat_path) << sat_doc.text;
    const ExternalSolverResult sat = run_external_solver(solver, sat_path);
    REQUIRE(sat.satisfiable);
    const Code decoded = decode_assignment(sat_doc, sat.output);
    CHECK_FALSE(first_violation(decoded).has_value());

    const ConstraintDocument unsat_doc = emit_dimacs(one, 4);
    const auto unsat_path = dir / "unsat.cnf";
    std::ofstream(unsat_path) << unsat_doc.text;
    CHECK_FALSE(run_external_solver(solver, unsat_path).satisfiable);
  }
}
