// Minimal DIMACS solver speaking the standard s/v protocol. Exists so the
// external-solver harness can be exercised end to end on small instances;
// point TRIFF_SAT_SOLVER at a real solver for anything serious.

#include <fstream>
#include <iostream>
#include <sstream>

#include "triff/dpll.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: triff-toysat <file.cnf>\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << "\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    const triff::CnfFormula formula = triff::parse_dimacs(buf.str());
    const auto model = triff::dpll_solve(formula);
    if (!model) {
      std::cout << "s UNSATISFIABLE\n";
      return 20;
    }
    std::cout << "s SATISFIABLE\n";
    std::string line = "v";
    for (int v = 1; v <= formula.num_vars; ++v) {
      line += (*model)[static_cast<size_t>(v)] ? " " : " -";
      line += std::to_string(v);
      if (line.size() > 70) {
        std::cout << line << "\n";
        line = "v";
      }
    }
    std::cout << line << " 0\n";
    return 10;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
