#include "triff/smt_eval.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

#include "triff/sexpr.hpp"

namespace triff {

namespace {

struct Env {
  const std::vector<std::string>* names = nullptr;
  const std::vector<long long>* values = nullptr;

  long long lookup(const std::string& name) const {
    for (size_t i = 0; i < names->size(); ++i)
      if ((*names)[i] == name) return (*values)[i];
    throw std::runtime_error("unknown constant " + name);
  }
};

bool parse_int(const std::string& s, long long& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

long long eval_int(const SExpr& e, const Env& env) {
  if (e.is_atom) {
    long long v;
    if (parse_int(e.atom, v)) return v;
    return env.lookup(e.atom);
  }
  if (e.items.size() == 2 && e.items[0].is_atom && e.items[0].atom == "-")
    return -eval_int(e.items[1], env);
  throw std::runtime_error("unsupported integer term: " + render_sexpr(e));
}

bool eval_bool(const SExpr& e, const Env& env) {
  if (e.is_atom) {
    if (e.atom == "true") return true;
    if (e.atom == "false") return false;
    throw std::runtime_error("unsupported boolean atom: " + e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom)
    throw std::runtime_error("unsupported expression: " + render_sexpr(e));
  const std::string& op = e.items[0].atom;
  if (op == "and") {
    for (size_t i = 1; i < e.items.size(); ++i)
      if (!eval_bool(e.items[i], env)) return false;
    return true;
  }
  if (op == "or") {
    for (size_t i = 1; i < e.items.size(); ++i)
      if (eval_bool(e.items[i], env)) return true;
    return false;
  }
  if (op == "not") {
    if (e.items.size() != 2) throw std::runtime_error("not takes one argument");
    return !eval_bool(e.items[1], env);
  }
  if (op == "=") {
    const long long first = eval_int(e.items[1], env);
    for (size_t i = 2; i < e.items.size(); ++i)
      if (eval_int(e.items[i], env) != first) return false;
    return true;
  }
  if (op == "<=") {
    for (size_t i = 1; i + 1 < e.items.size(); ++i)
      if (eval_int(e.items[i], env) > eval_int(e.items[i + 1], env)) return false;
    return true;
  }
  if (op == "distinct") {
    for (size_t i = 1; i < e.items.size(); ++i)
      for (size_t j = i + 1; j < e.items.size(); ++j)
        if (eval_int(e.items[i], env) == eval_int(e.items[j], env)) return false;
    return true;
  }
  throw std::runtime_error("unsupported operator: " + op);
}

// Recognizes (and (<= lo x) (<= x hi)) and records [lo, hi] for x.
bool domain_bounds(const SExpr& body, const std::string& name, long long& lo, long long& hi) {
  if (body.is_atom || body.items.size() != 3) return false;
  if (!body.items[0].is_atom || body.items[0].atom != "and") return false;
  const SExpr& a = body.items[1];
  const SExpr& b = body.items[2];
  if (a.is_atom || b.is_atom || a.items.size() != 3 || b.items.size() != 3) return false;
  if (a.items[0].atom != "<=" || b.items[0].atom != "<=") return false;
  if (!a.items[2].is_atom || a.items[2].atom != name) return false;
  if (!b.items[1].is_atom || b.items[1].atom != name) return false;
  return parse_int(a.items[1].atom, lo) && parse_int(b.items[2].atom, hi);
}

}  // namespace

std::optional<SmtModel> smt_find_model(std::string_view smtlib_text,
                                       std::uint64_t max_assignments) {
  const auto exprs = parse_sexpr_list(smtlib_text);
  std::vector<std::string> names;
  std::vector<long long> lows, highs;
  std::vector<const SExpr*> asserts;
  for (const auto& e : exprs) {
    if (e.is_atom || e.items.empty() || !e.items[0].is_atom) continue;
    const std::string& cmd = e.items[0].atom;
    if (cmd == "declare-const") {
      if (e.items.size() != 3 || !e.items[1].is_atom || e.items[2].atom != "Int")
        throw std::runtime_error("only integer constants are supported");
      names.push_back(e.items[1].atom);
      lows.push_back(0);
      highs.push_back(-1);  // unset
    } else if (cmd == "assert") {
      if (e.items.size() != 2) throw std::runtime_error("assert takes one argument");
      asserts.push_back(&e.items[1]);
    } else if (cmd == "check-sat" || cmd == "get-model" || cmd == "set-logic" ||
               cmd == "set-option") {
      // ignored
    } else {
      throw std::runtime_error("unsupported command " + cmd);
    }
  }
  // pick up each constant's bounds from its domain assertion
  std::vector<const SExpr*> other_asserts;
  std::vector<bool> bounded(names.size(), false);
  for (const SExpr* a : asserts) {
    bool matched = false;
    for (size_t i = 0; i < names.size() && !matched; ++i) {
      long long lo, hi;
      if (!bounded[i] && domain_bounds(*a, names[i], lo, hi)) {
        lows[i] = lo;
        highs[i] = hi;
        bounded[i] = true;
        matched = true;
      }
    }
    if (!matched) other_asserts.push_back(a);
  }
  double product = 1;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!bounded[i])
      throw std::runtime_error("no domain assertion found for " + names[i]);
    if (highs[i] < lows[i]) return std::nullopt;
    product *= static_cast<double>(highs[i] - lows[i] + 1);
    if (product > static_cast<double>(max_assignments))
      throw std::runtime_error("assignment space exceeds the enumeration guard");
  }

  std::vector<long long> values = lows;
  Env env{&names, &values};
  while (true) {
    bool ok = true;
    for (const SExpr* a : other_asserts)
      if (!eval_bool(*a, env)) {
        ok = false;
        break;
      }
    if (ok) {
      SmtModel model;
      for (size_t i = 0; i < names.size(); ++i) model.values[names[i]] = values[i];
      return model;
    }
    // odometer, last constant fastest
    size_t i = names.size();
    while (i > 0) {
      --i;
      if (++values[i] <= highs[i]) break;
      values[i] = lows[i];
      if (i == 0) return std::nullopt;
    }
    if (names.empty()) return std::nullopt;
  }
}

std::string render_smt_model(const SmtModel& model) {
  std::string out = "(\n";
  for (const auto& [name, value] : model.values) {
    out += "  (define-fun " + name + " () Int ";
    if (value < 0)
      out += "(- " + std::to_string(-value) + ")";
    else
      out += std::to_string(value);
    out += ")\n";
  }
  out += ")\n";
  return out;
}

}  // namespace triff
