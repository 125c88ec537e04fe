#include "triff/dpll.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace triff {

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  std::istringstream in{std::string(text)};
  std::string line;
  bool saw_header = false;
  long long declared_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      long long vars = 0;
      if (std::sscanf(line.c_str(), "p cnf %lld %lld", &vars, &declared_clauses) != 2)
        throw std::runtime_error("bad problem line");
      f.num_vars = static_cast<int>(vars);
      saw_header = true;
      continue;
    }
    if (!saw_header) throw std::runtime_error("clause before problem line");
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(current);
        current.clear();
      } else {
        if (std::abs(lit) > f.num_vars) throw std::runtime_error("literal out of range");
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) throw std::runtime_error("unterminated final clause");
  if (!saw_header) throw std::runtime_error("missing problem line");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses)
    throw std::runtime_error("clause count does not match header");
  return f;
}

namespace {

enum : char { kUnset = 0, kFalse = 1, kTrue = 2 };

struct Solver {
  const CnfFormula& f;
  std::vector<char> value;  // 1-based
  std::vector<int> trail;
  std::uint64_t decisions = 0;
  std::uint64_t max_decisions;

  Solver(const CnfFormula& formula, std::uint64_t cap)
      : f(formula), value(static_cast<size_t>(formula.num_vars) + 1, kUnset), max_decisions(cap) {}

  bool lit_true(int lit) const {
    const char v = value[static_cast<size_t>(std::abs(lit))];
    return v != kUnset && ((lit > 0) == (v == kTrue));
  }
  bool lit_false(int lit) const {
    const char v = value[static_cast<size_t>(std::abs(lit))];
    return v != kUnset && ((lit > 0) == (v == kFalse));
  }

  void assign(int lit) {
    value[static_cast<size_t>(std::abs(lit))] = lit > 0 ? kTrue : kFalse;
    trail.push_back(lit);
  }

  void unwind(size_t mark) {
    while (trail.size() > mark) {
      value[static_cast<size_t>(std::abs(trail.back()))] = kUnset;
      trail.pop_back();
    }
  }

  // false on conflict
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : f.clauses) {
        int unassigned = 0;
        int unit = 0;
        bool satisfied = false;
        for (int lit : clause) {
          if (lit_true(lit)) {
            satisfied = true;
            break;
          }
          if (!lit_false(lit)) {
            ++unassigned;
            unit = lit;
            if (unassigned > 1) break;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(unit);
          changed = true;
        }
      }
    }
    return true;
  }

  bool solve() {
    if (!propagate()) return false;
    int var = 0;
    for (int v = 1; v <= f.num_vars; ++v)
      if (value[static_cast<size_t>(v)] == kUnset) {
        var = v;
        break;
      }
    if (var == 0) return true;
    if (++decisions > max_decisions)
      throw std::runtime_error("dpll decision budget exceeded (test-scale solver)");
    // true-first: one-hot cells then enumerate symbols ascending and
    // single-polarity auxiliaries settle without backtracking
    for (int phase = 0; phase < 2; ++phase) {
      const size_t mark = trail.size();
      assign(phase == 0 ? var : -var);
      if (solve()) return true;
      unwind(mark);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<bool>> dpll_solve(const CnfFormula& formula,
                                            std::uint64_t max_decisions) {
  for (const auto& clause : formula.clauses)
    if (clause.empty()) return std::nullopt;
  Solver s(formula, max_decisions);
  if (!s.solve()) return std::nullopt;
  std::vector<bool> model(static_cast<size_t>(formula.num_vars) + 1, false);
  for (int v = 1; v <= formula.num_vars; ++v) model[static_cast<size_t>(v)] = s.value[static_cast<size_t>(v)] == kTrue;
  return model;
}

std::optional<std::vector<bool>> dpll_solve_dimacs(std::string_view text,
                                                   std::uint64_t max_decisions) {
  return dpll_solve(parse_dimacs(text), max_decisions);
}

}  // namespace triff
