#pragma once

// Command-line entry point. Exit codes: 0 success (and yes-style answers),
// 1 usage or input errors, 2 verification failures, 10 does-not-exist/UNSAT
// style answers, 20 budget exceeded.

#include <string>
#include <vector>

namespace triff::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kVerifyFail = 2;
inline constexpr int kNo = 10;
inline constexpr int kBudget = 20;

// args excludes the program name.
int run(std::vector<std::string> args);

}  // namespace triff::cli
