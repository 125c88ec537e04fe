#include "triff/msolab/sample.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace triff::msolab {

Vocabulary Vocabulary::of(const LabStructure& s) {
  Vocabulary v;
  v.branching = s.branching();
  v.alphabet = s.alphabet();
  for (const auto& [name, _] : s.constants()) v.constants.push_back(name);
  for (const auto& [name, _] : s.sets()) v.sets.push_back(name);
  return v;
}

namespace {

struct Generator {
  const Vocabulary& vocab;
  std::mt19937_64 rng;
  std::vector<std::string> ivars;
  std::vector<std::string> svars;
  int fresh = 0;

  int pick(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

  bool have_point_term() const { return !ivars.empty() || !vocab.constants.empty(); }
  bool have_set_term() const { return !svars.empty() || !vocab.sets.empty(); }

  std::string point_term() {
    const int total = static_cast<int>(ivars.size() + vocab.constants.size());
    const int i = pick(total);
    return i < static_cast<int>(ivars.size()) ? ivars[i]
                                              : vocab.constants[i - ivars.size()];
  }

  std::string set_term() {
    const int total = static_cast<int>(svars.size() + vocab.sets.size());
    const int i = pick(total);
    return i < static_cast<int>(svars.size()) ? svars[i] : vocab.sets[i - svars.size()];
  }

  std::string fresh_name(bool set_sort) {
    while (true) {
      std::string name = (set_sort ? "W" : "u") + std::to_string(fresh++);
      const auto& taken = set_sort ? vocab.sets : vocab.constants;
      if (std::find(taken.begin(), taken.end(), name) == taken.end()) return name;
    }
  }

  MsoFormula atom() {
    std::vector<int> options;
    if (have_point_term()) {
      options.push_back(0);  // =
      options.push_back(1);  // succ
      if (have_set_term()) options.push_back(2);
      if (vocab.alphabet > 0) options.push_back(3);
    }
    if (options.empty()) throw std::logic_error("no atom available");
    MsoFormula f;
    switch (options[pick(static_cast<int>(options.size()))]) {
      case 0:
        f.kind = FormKind::eq;
        f.term_a = point_term();
        f.term_b = point_term();
        break;
      case 1:
        f.kind = FormKind::succ;
        f.index = pick(vocab.branching);
        f.term_a = point_term();
        f.term_b = point_term();
        break;
      case 2:
        f.kind = FormKind::in;
        f.term_a = point_term();
        f.term_b = set_term();
        break;
      default:
        f.kind = FormKind::letter;
        f.index = pick(vocab.alphabet);
        f.term_a = point_term();
        break;
    }
    return f;
  }

  MsoFormula quantifier(int budget, int depth) {
    MsoFormula f;
    // the last budget unit must introduce a point term when none exists,
    // otherwise the body could never bottom out in an atom
    const int kind = (budget == 1 && !have_point_term()) ? pick(2) : pick(4);
    const bool set_sort = kind >= 2;
    f.kind = kind == 0   ? FormKind::exists1
             : kind == 1 ? FormKind::forall1
             : kind == 2 ? FormKind::existsS
                         : FormKind::forallS;
    f.var = fresh_name(set_sort);
    auto& stack = set_sort ? svars : ivars;
    stack.push_back(f.var);
    f.children.push_back(gen(budget - 1, depth + 1));
    stack.pop_back();
    return f;
  }

  MsoFormula gen(int budget, int depth) {
    const bool atoms_ok = have_point_term();
    const int max_depth = 6;
    // every state keeps budget > 0 or an atom available
    if (depth >= max_depth) {
      if (atoms_ok) return atom();
      return quantifier(budget, depth);
    }
    std::vector<int> options;
    if (atoms_ok) {
      options.insert(options.end(), 3, 0);  // atom
      options.insert(options.end(), 2, 1);  // connective
    } else {
      options.push_back(1);
    }
    if (budget > 0) options.insert(options.end(), 4, 2);  // quantifier
    switch (options[pick(static_cast<int>(options.size()))]) {
      case 0:
        return atom();
      case 2:
        return quantifier(budget, depth);
      default: {
        MsoFormula f;
        switch (pick(5)) {
          case 0: {
            f.kind = FormKind::neg;
            f.children.push_back(gen(budget, depth + 1));
            return f;
          }
          case 1:
            f.kind = FormKind::conj;
            break;
          case 2:
            f.kind = FormKind::disj;
            break;
          case 3:
            f.kind = FormKind::implies;
            break;
          default:
            f.kind = FormKind::iff;
            break;
        }
        f.children.push_back(gen(budget, depth + 1));
        f.children.push_back(gen(budget, depth + 1));
        return f;
      }
    }
  }
};

}  // namespace

std::vector<MsoFormula> sample_sentences(const Vocabulary& vocabulary, int rho, int count,
                                         std::uint64_t seed) {
  if (rho < 0) throw std::invalid_argument("rank must be nonnegative");
  if (count < 0) throw std::invalid_argument("count must be nonnegative");
  if (rho == 0 && vocabulary.constants.empty())
    throw std::invalid_argument("rank-0 sentences need at least one constant");
  std::vector<MsoFormula> out;
  out.reserve(static_cast<size_t>(count));
  Generator g{vocabulary, std::mt19937_64(seed), {}, {}, 0};
  for (int i = 0; i < count; ++i) out.push_back(g.gen(rho, 0));
  return out;
}

}  // namespace triff::msolab
