#include "triff/msolab/eval.hpp"

#include <stdexcept>
#include <vector>

namespace triff::msolab {

namespace {

struct Env {
  const LabStructure& s;
  const Assignment& assignment;
  std::vector<std::pair<std::string, int>> points;          // binding stack
  std::vector<std::pair<std::string, std::uint64_t>> sets;  // binding stack

  int resolve_point(const std::string& name) const {
    for (auto it = points.rbegin(); it != points.rend(); ++it)
      if (it->first == name) return it->second;
    if (int e = s.constant_element(name); e >= 0) return e;
    if (auto it = assignment.points.find(name); it != assignment.points.end()) {
      if (it->second < 0 || it->second >= s.size())
        throw std::invalid_argument("assignment element out of range for '" + name + "'");
      return it->second;
    }
    throw std::invalid_argument("unbound element name '" + name + "'");
  }

  std::uint64_t resolve_set(const std::string& name) const {
    for (auto it = sets.rbegin(); it != sets.rend(); ++it)
      if (it->first == name) return it->second;
    if (const std::uint64_t* m = s.set_members(name)) return *m;
    if (auto it = assignment.sets.find(name); it != assignment.sets.end()) {
      if (it->second & ~s.domain_mask())
        throw std::invalid_argument("assignment set out of range for '" + name + "'");
      return it->second;
    }
    throw std::invalid_argument("unbound set name '" + name + "'");
  }
};

bool eval(const MsoFormula& f, Env& env) {
  const LabStructure& s = env.s;
  switch (f.kind) {
    case FormKind::conj:
      for (const auto& c : f.children)
        if (!eval(c, env)) return false;
      return true;
    case FormKind::disj:
      for (const auto& c : f.children)
        if (eval(c, env)) return true;
      return false;
    case FormKind::neg:
      return !eval(f.children[0], env);
    case FormKind::implies:
      return !eval(f.children[0], env) || eval(f.children[1], env);
    case FormKind::iff:
      return eval(f.children[0], env) == eval(f.children[1], env);
    case FormKind::exists1:
    case FormKind::forall1: {
      const bool exists = f.kind == FormKind::exists1;
      env.points.emplace_back(f.var, 0);
      bool out = !exists;
      for (int v = 0; v < s.size(); ++v) {
        env.points.back().second = v;
        if (eval(f.children[0], env) == exists) {
          out = exists;
          break;
        }
      }
      env.points.pop_back();
      return out;
    }
    case FormKind::existsS:
    case FormKind::forallS: {
      const bool exists = f.kind == FormKind::existsS;
      env.sets.emplace_back(f.var, 0);
      bool out = !exists;
      const std::uint64_t limit = s.domain_mask();
      std::uint64_t mask = 0;
      while (true) {
        env.sets.back().second = mask;
        if (eval(f.children[0], env) == exists) {
          out = exists;
          break;
        }
        if (mask == limit) break;
        ++mask;
      }
      env.sets.pop_back();
      return out;
    }
    case FormKind::succ: {
      if (f.index >= s.branching())
        throw std::runtime_error("unknown successor index " + std::to_string(f.index));
      const int x = env.resolve_point(f.term_a);
      const int y = env.resolve_point(f.term_b);
      return s.succ(f.index, x, y);
    }
    case FormKind::in: {
      const int x = env.resolve_point(f.term_a);
      const std::uint64_t members = env.resolve_set(f.term_b);
      return (members >> x) & 1;
    }
    case FormKind::eq:
      return env.resolve_point(f.term_a) == env.resolve_point(f.term_b);
    case FormKind::letter: {
      if (!s.has_letters())
        throw std::runtime_error("structure has no letter predicate");
      if (f.index >= s.alphabet())
        throw std::runtime_error("letter " + std::to_string(f.index) + " outside the alphabet");
      const int x = env.resolve_point(f.term_a);
      return s.letter(x) == f.index;
    }
  }
  return false;
}

}  // namespace

bool evaluate(const LabStructure& s, const MsoFormula& f, const Assignment& assignment,
              int domain_guard) {
  if (s.size() > domain_guard)
    throw std::domain_error("domain size " + std::to_string(s.size()) +
                            " exceeds the evaluation guard " + std::to_string(domain_guard));
  Env env{s, assignment, {}, {}};
  return eval(f, env);
}

}  // namespace triff::msolab
