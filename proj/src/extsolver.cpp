#include "triff/extsolver.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace triff {

ExternalSolverResult run_external_solver(const std::string& solver_path,
                                         const std::filesystem::path& cnf_path) {
  const std::string cmd = "'" + solver_path + "' '" + cnf_path.string() + "' 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot launch solver: " + solver_path);
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  pclose(pipe);  // solvers exit 10/20 by convention; the s-line decides

  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) != 0) continue;
    if (line.find("UNSAT") != std::string::npos) return {false, std::move(output)};
    if (line.find("SAT") != std::string::npos) return {true, std::move(output)};
  }
  throw std::runtime_error("solver produced no s-line: " + solver_path);
}

}  // namespace triff
