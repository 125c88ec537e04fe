#include "triff/msolab/formula.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

#include "triff/sexpr.hpp"

namespace triff::msolab {

namespace {

[[noreturn]] void fail(const SExpr& at, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(at.line) + ", column " +
                           std::to_string(at.column) + ": " + msg);
}

int parse_index(const SExpr& e, const char* what) {
  if (!e.is_atom) fail(e, std::string(what) + " must be an integer");
  int v = 0;
  auto [p, ec] = std::from_chars(e.atom.data(), e.atom.data() + e.atom.size(), v);
  if (ec != std::errc() || p != e.atom.data() + e.atom.size() || v < 0)
    fail(e, std::string(what) + " must be a nonnegative integer, got '" + e.atom + "'");
  return v;
}

enum class Sort { point, set };

struct ScopeChecker {
  std::vector<std::pair<std::string, Sort>> bound;  // stack
  std::map<std::string, Sort> free;

  void use(const SExpr& at, const std::string& name, Sort sort) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      if (it->first == name) {
        if (it->second != sort)
          fail(at, "variable '" + name + "' used as " +
                       (sort == Sort::point ? "an element" : "a set") + " but bound as " +
                       (it->second == Sort::point ? "an element" : "a set"));
        return;
      }
    auto [it, inserted] = free.emplace(name, sort);
    if (!inserted && it->second != sort)
      fail(at, "free name '" + name + "' used with two sorts");
  }
};

std::string atom_name(const SExpr& e, const char* what) {
  if (!e.is_atom || e.atom.empty()) fail(e, std::string(what) + " expected");
  return e.atom;
}

MsoFormula build(const SExpr& e, ScopeChecker& scope) {
  if (e.is_atom) fail(e, "expected a formula, got atom '" + e.atom + "'");
  if (e.items.empty() || !e.items[0].is_atom) fail(e, "expected a formula");
  const std::string& head = e.items[0].atom;
  MsoFormula f;
  auto expect = [&](size_t n, const char* usage) {
    if (e.items.size() != n) fail(e, std::string("expected ") + usage);
  };
  if (head == "and" || head == "or") {
    if (e.items.size() < 2) fail(e, head + " needs at least one operand");
    f.kind = head == "and" ? FormKind::conj : FormKind::disj;
    for (size_t i = 1; i < e.items.size(); ++i) f.children.push_back(build(e.items[i], scope));
  } else if (head == "not") {
    expect(2, "(not f)");
    f.kind = FormKind::neg;
    f.children.push_back(build(e.items[1], scope));
  } else if (head == "implies" || head == "iff") {
    expect(3, head == "implies" ? "(implies f g)" : "(iff f g)");
    f.kind = head == "implies" ? FormKind::implies : FormKind::iff;
    f.children.push_back(build(e.items[1], scope));
    f.children.push_back(build(e.items[2], scope));
  } else if (head == "exists1" || head == "forall1" || head == "existsS" || head == "forallS") {
    expect(3, "(quantifier var f)");
    const Sort sort = (head == "existsS" || head == "forallS") ? Sort::set : Sort::point;
    f.kind = head == "exists1"  ? FormKind::exists1
             : head == "forall1" ? FormKind::forall1
             : head == "existsS" ? FormKind::existsS
                                 : FormKind::forallS;
    f.var = atom_name(e.items[1], "variable name");
    scope.bound.emplace_back(f.var, sort);
    f.children.push_back(build(e.items[2], scope));
    scope.bound.pop_back();
  } else if (head == "succ") {
    expect(4, "(succ a x y)");
    f.kind = FormKind::succ;
    f.index = parse_index(e.items[1], "successor index");
    f.term_a = atom_name(e.items[2], "element term");
    f.term_b = atom_name(e.items[3], "element term");
    scope.use(e.items[2], f.term_a, Sort::point);
    scope.use(e.items[3], f.term_b, Sort::point);
  } else if (head == "in") {
    expect(3, "(in x X)");
    f.kind = FormKind::in;
    f.term_a = atom_name(e.items[1], "element term");
    f.term_b = atom_name(e.items[2], "set term");
    scope.use(e.items[1], f.term_a, Sort::point);
    scope.use(e.items[2], f.term_b, Sort::set);
  } else if (head == "=") {
    expect(3, "(= x y)");
    f.kind = FormKind::eq;
    f.term_a = atom_name(e.items[1], "element term");
    f.term_b = atom_name(e.items[2], "element term");
    scope.use(e.items[1], f.term_a, Sort::point);
    scope.use(e.items[2], f.term_b, Sort::point);
  } else if (head == "letter") {
    expect(3, "(letter a x)");
    f.kind = FormKind::letter;
    f.index = parse_index(e.items[1], "letter");
    f.term_a = atom_name(e.items[2], "element term");
    scope.use(e.items[2], f.term_a, Sort::point);
  } else {
    fail(e, "unknown form '" + head + "'");
  }
  return f;
}

void collect_free(const MsoFormula& f, std::vector<std::string>& bound_points,
                  std::vector<std::string>& bound_sets, FreeVars& out) {
  auto note_point = [&](const std::string& name) {
    if (std::find(bound_points.begin(), bound_points.end(), name) == bound_points.end() &&
        std::find(out.points.begin(), out.points.end(), name) == out.points.end())
      out.points.push_back(name);
  };
  auto note_set = [&](const std::string& name) {
    if (std::find(bound_sets.begin(), bound_sets.end(), name) == bound_sets.end() &&
        std::find(out.sets.begin(), out.sets.end(), name) == out.sets.end())
      out.sets.push_back(name);
  };
  switch (f.kind) {
    case FormKind::succ:
    case FormKind::eq:
      note_point(f.term_a);
      note_point(f.term_b);
      break;
    case FormKind::letter:
      note_point(f.term_a);
      break;
    case FormKind::in:
      note_point(f.term_a);
      note_set(f.term_b);
      break;
    case FormKind::exists1:
    case FormKind::forall1:
      bound_points.push_back(f.var);
      collect_free(f.children[0], bound_points, bound_sets, out);
      bound_points.pop_back();
      break;
    case FormKind::existsS:
    case FormKind::forallS:
      bound_sets.push_back(f.var);
      collect_free(f.children[0], bound_points, bound_sets, out);
      bound_sets.pop_back();
      break;
    default:
      for (const auto& c : f.children) collect_free(c, bound_points, bound_sets, out);
  }
}

}  // namespace

int MsoFormula::quantifier_rank() const {
  int best = 0;
  for (const auto& c : children) best = std::max(best, c.quantifier_rank());
  switch (kind) {
    case FormKind::exists1:
    case FormKind::forall1:
    case FormKind::existsS:
    case FormKind::forallS:
      return best + 1;
    default:
      return best;
  }
}

MsoFormula parse_formula(std::string_view text) {
  const SExpr e = parse_sexpr(text);
  ScopeChecker scope;
  return build(e, scope);
}

std::string render_formula(const MsoFormula& f) {
  switch (f.kind) {
    case FormKind::conj:
    case FormKind::disj: {
      std::string out = f.kind == FormKind::conj ? "(and" : "(or";
      for (const auto& c : f.children) out += " " + render_formula(c);
      return out + ")";
    }
    case FormKind::neg:
      return "(not " + render_formula(f.children[0]) + ")";
    case FormKind::implies:
      return "(implies " + render_formula(f.children[0]) + " " + render_formula(f.children[1]) + ")";
    case FormKind::iff:
      return "(iff " + render_formula(f.children[0]) + " " + render_formula(f.children[1]) + ")";
    case FormKind::exists1:
      return "(exists1 " + f.var + " " + render_formula(f.children[0]) + ")";
    case FormKind::forall1:
      return "(forall1 " + f.var + " " + render_formula(f.children[0]) + ")";
    case FormKind::existsS:
      return "(existsS " + f.var + " " + render_formula(f.children[0]) + ")";
    case FormKind::forallS:
      return "(forallS " + f.var + " " + render_formula(f.children[0]) + ")";
    case FormKind::succ:
      return "(succ " + std::to_string(f.index) + " " + f.term_a + " " + f.term_b + ")";
    case FormKind::in:
      return "(in " + f.term_a + " " + f.term_b + ")";
    case FormKind::eq:
      return "(= " + f.term_a + " " + f.term_b + ")";
    case FormKind::letter:
      return "(letter " + std::to_string(f.index) + " " + f.term_a + ")";
  }
  return {};
}

FreeVars free_variables(const MsoFormula& f) {
  FreeVars out;
  std::vector<std::string> bp, bs;
  collect_free(f, bp, bs, out);
  return out;
}

}  // namespace triff::msolab
