#pragma once

// Harness for an external DIMACS solver executable: invoked with the CNF
// path as its single argument, expected to emit standard "s ..." and "v ..."
// lines on stdout. Configured through the TRIFF_SAT_SOLVER environment
// variable by the callers that use it.

#include <filesystem>
#include <string>

namespace triff {

struct ExternalSolverResult {
  bool satisfiable = false;
  std::string output;  // full stdout; v-lines feed the decoder
};

// Throws std::runtime_error when the solver cannot be launched or emits no
// recognizable s-line.
ExternalSolverResult run_external_solver(const std::string& solver_path,
                                         const std::filesystem::path& cnf_path);

}  // namespace triff
