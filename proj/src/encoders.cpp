#include "triff/encoders.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "triff/sexpr.hpp"

namespace triff {

namespace {

long long choose(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  long long out = 1;
  for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// Lexicographic combination stepping shared by emitters and subset_rows.
bool next_combination(std::vector<int>& idx, int m) {
  const int k = static_cast<int>(idx.size());
  int pos = k - 1;
  while (pos >= 0 && idx[pos] == m - k + pos) --pos;
  if (pos < 0) return false;
  ++idx[pos];
  for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  return true;
}

void check_emit_args(const CodeParams& params, int m) {
  params.validate();
  if (m < params.k) throw std::invalid_argument("instance needs m >= k rows");
}

}  // namespace

long long ConstraintDocument::num_pairs() const { return choose(m, 2); }
long long ConstraintDocument::num_subsets() const { return choose(m, params.k); }

long long ConstraintDocument::num_vars() const {
  return static_cast<long long>(m) * params.n * params.b + num_pairs() * params.n +
         num_subsets() * params.n;
}

long long ConstraintDocument::num_clauses() const {
  const long long cells = static_cast<long long>(m) * params.n;
  const long long amo = static_cast<long long>(params.b) * (params.b - 1) / 2;
  const long long kp = static_cast<long long>(params.k) * (params.k - 1) / 2;
  return cells * (1 + amo) + num_pairs() * params.n * params.b +
         num_subsets() * params.n * kp + num_subsets();
}

int ConstraintDocument::cell_var(int row, int col, int sym) const {
  return static_cast<int>((static_cast<long long>(row) * params.n + col) * params.b + sym + 1);
}

int ConstraintDocument::pair_var(int p, int q, int col) const {
  // lex rank of (p,q), p < q
  const long long rank = choose(m, 2) - choose(m - p, 2) + (q - p - 1);
  return static_cast<int>(static_cast<long long>(m) * params.n * params.b + rank * params.n +
                          col + 1);
}

int ConstraintDocument::subset_var(int t, int col) const {
  return static_cast<int>(static_cast<long long>(m) * params.n * params.b +
                          num_pairs() * params.n + static_cast<long long>(t) * params.n + col + 1);
}

std::string ConstraintDocument::cell_name(int row, int col) const {
  return "x_" + std::to_string(row) + "_" + std::to_string(col);
}

std::vector<int> ConstraintDocument::subset_rows(int t) const {
  std::vector<int> idx(static_cast<size_t>(params.k));
  for (int i = 0; i < params.k; ++i) idx[i] = i;
  for (int i = 0; i < t; ++i)
    if (!next_combination(idx, m)) throw std::out_of_range("subset rank out of range");
  return idx;
}

ConstraintDocument emit_dimacs(const CodeParams& params, int m) {
  check_emit_args(params, m);
  ConstraintDocument doc;
  doc.kind = DocKind::cnf;
  doc.params = params;
  doc.m = m;
  if (doc.num_vars() + doc.num_clauses() > (1ll << 31))
    throw std::invalid_argument("instance too large to emit");

  std::string out;
  out += "c triff cnf hash-code instance b=" + std::to_string(params.b) +
         " k=" + std::to_string(params.k) + " n=" + std::to_string(params.n) +
         " m=" + std::to_string(m) + "\n";
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < params.n; ++j)
      for (int s = 0; s < params.b; ++s)
        out += "c map v " + std::to_string(doc.cell_var(i, j, s)) + " row " + std::to_string(i) +
               " col " + std::to_string(j) + " sym " + std::to_string(s) + "\n";
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q)
      for (int j = 0; j < params.n; ++j)
        out += "c map e " + std::to_string(doc.pair_var(p, q, j)) + " rows " + std::to_string(p) +
               " " + std::to_string(q) + " col " + std::to_string(j) + "\n";
  {
    std::vector<int> idx(static_cast<size_t>(params.k));
    for (int i = 0; i < params.k; ++i) idx[i] = i;
    int t = 0;
    do {
      for (int j = 0; j < params.n; ++j) {
        out += "c map a " + std::to_string(doc.subset_var(t, j)) + " rows";
        for (int r : idx) out += " " + std::to_string(r);
        out += " col " + std::to_string(j) + "\n";
      }
      ++t;
    } while (next_combination(idx, m));
  }

  out += "p cnf " + std::to_string(doc.num_vars()) + " " + std::to_string(doc.num_clauses()) + "\n";

  // exactly-one per cell
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < params.n; ++j) {
      for (int s = 0; s < params.b; ++s)
        out += std::to_string(doc.cell_var(i, j, s)) + (s + 1 < params.b ? " " : " 0\n");
      for (int s = 0; s < params.b; ++s)
        for (int s2 = s + 1; s2 < params.b; ++s2)
          out += "-" + std::to_string(doc.cell_var(i, j, s)) + " -" +
                 std::to_string(doc.cell_var(i, j, s2)) + " 0\n";
    }
  // pair auxiliaries: e -> rows differ
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q)
      for (int j = 0; j < params.n; ++j)
        for (int s = 0; s < params.b; ++s)
          out += "-" + std::to_string(doc.pair_var(p, q, j)) + " -" +
                 std::to_string(doc.cell_var(p, j, s)) + " -" +
                 std::to_string(doc.cell_var(q, j, s)) + " 0\n";
  // subset auxiliaries: a -> every pair differs
  {
    std::vector<int> idx(static_cast<size_t>(params.k));
    for (int i = 0; i < params.k; ++i) idx[i] = i;
    int t = 0;
    do {
      for (int j = 0; j < params.n; ++j)
        for (int u = 0; u < params.k; ++u)
          for (int v = u + 1; v < params.k; ++v)
            out += "-" + std::to_string(doc.subset_var(t, j)) + " " +
                   std::to_string(doc.pair_var(idx[u], idx[v], j)) + " 0\n";
      ++t;
    } while (next_combination(idx, m));
  }
  // every subset hashed in some column
  {
    std::vector<int> idx(static_cast<size_t>(params.k));
    for (int i = 0; i < params.k; ++i) idx[i] = i;
    int t = 0;
    do {
      for (int j = 0; j < params.n; ++j)
        out += std::to_string(doc.subset_var(t, j)) + (j + 1 < params.n ? " " : " 0\n");
      ++t;
    } while (next_combination(idx, m));
  }

  doc.text = std::move(out);
  return doc;
}

ConstraintDocument emit_smtlib(const CodeParams& params, int m) {
  check_emit_args(params, m);
  ConstraintDocument doc;
  doc.kind = DocKind::smtlib2;
  doc.params = params;
  doc.m = m;

  std::string out;
  out += "; triff smtlib2 hash-code instance b=" + std::to_string(params.b) +
         " k=" + std::to_string(params.k) + " n=" + std::to_string(params.n) +
         " m=" + std::to_string(m) + "\n";
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < params.n; ++j)
      out += "; map v " + doc.cell_name(i, j) + " row " + std::to_string(i) + " col " +
             std::to_string(j) + "\n";
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < params.n; ++j)
      out += "(declare-const " + doc.cell_name(i, j) + " Int)\n";
  const std::string top = std::to_string(params.b - 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < params.n; ++j)
      out += "(assert (and (<= 0 " + doc.cell_name(i, j) + ") (<= " + doc.cell_name(i, j) + " " +
             top + ")))\n";
  {
    std::vector<int> idx(static_cast<size_t>(params.k));
    for (int i = 0; i < params.k; ++i) idx[i] = i;
    do {
      out += "(assert (or";
      for (int j = 0; j < params.n; ++j) {
        out += " (and";
        for (int u = 0; u < params.k; ++u)
          for (int v = u + 1; v < params.k; ++v)
            out += " (not (= " + doc.cell_name(idx[u], j) + " " + doc.cell_name(idx[v], j) + "))";
        out += ")";
      }
      out += "))\n";
    } while (next_combination(idx, m));
  }
  out += "(check-sat)\n(get-model)\n";

  doc.text = std::move(out);
  return doc;
}

ConstraintDocument parse_document(std::string_view text) {
  const size_t eol = text.find('\n');
  const std::string first{text.substr(0, eol == std::string_view::npos ? text.size() : eol)};
  ConstraintDocument doc;
  int b = 0, k = 0, n = 0, m = 0;
  if (std::sscanf(first.c_str(), "c triff cnf hash-code instance b=%d k=%d n=%d m=%d", &b, &k, &n,
                  &m) == 4) {
    doc.kind = DocKind::cnf;
  } else if (std::sscanf(first.c_str(), "; triff smtlib2 hash-code instance b=%d k=%d n=%d m=%d",
                         &b, &k, &n, &m) == 4) {
    doc.kind = DocKind::smtlib2;
  } else {
    throw std::runtime_error("unrecognized document: missing triff instance header line");
  }
  doc.params = CodeParams{b, k, n};
  doc.params.validate();
  if (m < k) throw std::runtime_error("document header has m < k");
  doc.m = m;
  doc.text = std::string(text);
  return doc;
}

namespace {

void validate_dimacs(const ConstraintDocument& doc) {
  std::istringstream in(doc.text);
  std::string line;
  std::map<int, std::string> map_lines;  // id -> role description
  long long clause_count = 0;
  bool saw_header = false;
  long long declared_vars = 0, declared_clauses = 0;
  std::vector<int> current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("c map ", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::string role;
      int id = 0;
      ls >> role >> id;
      if (!ls || id <= 0) throw std::runtime_error("bad map line at " + std::to_string(lineno));
      std::string rest;
      std::getline(ls, rest);
      if (!map_lines.emplace(id, role + rest).second)
        throw std::runtime_error("duplicate map id " + std::to_string(id));
      continue;
    }
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (std::sscanf(line.c_str(), "p cnf %lld %lld", &declared_vars, &declared_clauses) != 2)
        throw std::runtime_error("bad problem line");
      saw_header = true;
      continue;
    }
    if (!saw_header) throw std::runtime_error("clause before problem line");
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        ++clause_count;
        current.clear();
      } else {
        if (std::abs(lit) > declared_vars)
          throw std::runtime_error("literal out of range at line " + std::to_string(lineno));
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) throw std::runtime_error("unterminated final clause");
  if (!saw_header) throw std::runtime_error("missing problem line");
  if (declared_vars != doc.num_vars())
    throw std::runtime_error("declared variable count does not match the instance");
  if (declared_clauses != doc.num_clauses() || clause_count != declared_clauses)
    throw std::runtime_error("declared clause count does not match the body");
  // map completeness + role/formula agreement
  if (static_cast<long long>(map_lines.size()) != doc.num_vars())
    throw std::runtime_error("variable map incomplete");
  for (int i = 0; i < doc.m; ++i)
    for (int j = 0; j < doc.params.n; ++j)
      for (int s = 0; s < doc.params.b; ++s) {
        auto it = map_lines.find(doc.cell_var(i, j, s));
        if (it == map_lines.end() || it->second.rfind("v", 0) != 0)
          throw std::runtime_error("cell variable missing from map");
      }
}

void validate_smtlib(const ConstraintDocument& doc) {
  const auto exprs = parse_sexpr_list(doc.text);
  const long long cells = static_cast<long long>(doc.m) * doc.params.n;
  long long declares = 0, domain_asserts = 0, subset_asserts = 0;
  bool check_sat = false, get_model = false;
  std::set<std::string> declared;
  for (const auto& e : exprs) {
    if (e.is_atom || e.items.empty() || !e.items[0].is_atom)
      throw std::runtime_error("unexpected top-level expression");
    const std::string& cmd = e.items[0].atom;
    if (cmd == "declare-const") {
      if (e.items.size() != 3 || e.items[2].atom != "Int")
        throw std::runtime_error("declare-const must use sort Int");
      if (!declared.insert(e.items[1].atom).second)
        throw std::runtime_error("duplicate declaration " + e.items[1].atom);
      ++declares;
    } else if (cmd == "assert") {
      if (e.items.size() != 2) throw std::runtime_error("assert takes one argument");
      const SExpr& body = e.items[1];
      if (!body.is_atom && !body.items.empty() && body.items[0].atom == "and" &&
          body.items.size() == 3 && !body.items[1].is_atom && !body.items[1].items.empty() &&
          body.items[1].items[0].atom == "<=")
        ++domain_asserts;
      else if (!body.is_atom && !body.items.empty() && body.items[0].atom == "or")
        ++subset_asserts;
      else
        throw std::runtime_error("unexpected assertion shape");
    } else if (cmd == "check-sat") {
      check_sat = true;
    } else if (cmd == "get-model") {
      get_model = true;
    } else {
      throw std::runtime_error("unsupported command " + cmd);
    }
  }
  if (declares != cells) throw std::runtime_error("declaration count mismatch");
  if (domain_asserts != cells) throw std::runtime_error("domain assertion count mismatch");
  if (subset_asserts != doc.num_subsets()) throw std::runtime_error("subset assertion count mismatch");
  if (!check_sat || !get_model) throw std::runtime_error("missing check-sat or get-model");
  for (int i = 0; i < doc.m; ++i)
    for (int j = 0; j < doc.params.n; ++j)
      if (!declared.count(doc.cell_name(i, j)))
        throw std::runtime_error("missing declaration for " + doc.cell_name(i, j));
  // embedded map lines
  std::istringstream in(doc.text);
  std::string line;
  std::set<std::string> mapped;
  while (std::getline(in, line))
    if (line.rfind("; map v ", 0) == 0) {
      std::istringstream ls(line.substr(8));
      std::string name;
      ls >> name;
      if (!mapped.insert(name).second) throw std::runtime_error("duplicate map entry " + name);
    }
  if (static_cast<long long>(mapped.size()) != cells)
    throw std::runtime_error("variable map incomplete");
}

}  // namespace

void validate_document(const ConstraintDocument& doc) {
  doc.params.validate();
  if (doc.m < doc.params.k) throw std::runtime_error("document has m < k");
  if (doc.kind == DocKind::cnf)
    validate_dimacs(doc);
  else
    validate_smtlib(doc);
}

namespace {

Code matrix_to_code(const ConstraintDocument& doc,
                    const std::vector<std::vector<int>>& matrix) {
  std::vector<Word> words;
  words.reserve(static_cast<size_t>(doc.m));
  for (const auto& row : matrix) {
    std::vector<std::uint16_t> sym(row.begin(), row.end());
    words.emplace_back(doc.params, std::move(sym));
  }
  Code code = [&] {
    try {
      return Code(doc.params, std::move(words));
    } catch (const std::exception& e) {
      throw VerificationError(std::string("decoded matrix is not a valid code (encoder bug): ") +
                               e.what());
    }
  }();
  if (auto bad = first_violation(code)) {
    std::string rows;
    for (int r : *bad) rows += " " + std::to_string(r + 1);
    throw VerificationError("decoded code fails verification (encoder bug): rows" + rows);
  }
  return code;
}

Code decode_cnf(const ConstraintDocument& doc, std::string_view model_text) {
  std::istringstream in{std::string(model_text)};
  std::string line;
  std::vector<int> lits;
  bool unsat = false;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSAT") != std::string::npos) unsat = true;
      continue;
    }
    if (line.rfind("c", 0) == 0) continue;
    std::string body = line;
    const bool v_line = line.rfind("v", 0) == 0 &&
                        (line.size() == 1 || line[1] == ' ' || line[1] == '\t');
    if (v_line) body = line.substr(1);
    std::istringstream ls(body);
    int lit;
    std::vector<int> row;
    while (ls >> lit) row.push_back(lit);
    if (!ls.eof()) {  // non-numeric token
      if (v_line) throw std::runtime_error("malformed v-line in solver output");
      continue;  // prose line, e.g. minisat's "SATISFIABLE"
    }
    lits.insert(lits.end(), row.begin(), row.end());
  }
  if (unsat) throw NoModelError("no model present: solver reported UNSAT");
  if (lits.empty()) throw NoModelError("no model present in solver output");
  std::vector<char> value(static_cast<size_t>(doc.num_vars()) + 1, 0);
  for (int lit : lits) {
    if (lit == 0) continue;
    const int v = std::abs(lit);
    if (v > doc.num_vars()) throw std::runtime_error("model literal out of range");
    value[v] = lit > 0 ? 1 : 0;
  }
  std::vector<std::vector<int>> matrix(static_cast<size_t>(doc.m),
                                       std::vector<int>(static_cast<size_t>(doc.params.n)));
  for (int i = 0; i < doc.m; ++i)
    for (int j = 0; j < doc.params.n; ++j) {
      int found = -1;
      for (int s = 0; s < doc.params.b; ++s)
        if (value[doc.cell_var(i, j, s)]) {
          if (found >= 0)
            throw std::runtime_error("cell (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") is not exactly-one: two symbols set");
          found = s;
        }
      if (found < 0)
        throw std::runtime_error("cell (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") is not exactly-one: no symbol set");
      matrix[i][j] = found;
    }
  return matrix_to_code(doc, matrix);
}

void collect_define_funs(const SExpr& e, std::map<std::string, long long>& out) {
  if (e.is_atom) return;
  if (!e.items.empty() && e.items[0].is_atom && e.items[0].atom == "define-fun" &&
      e.items.size() >= 5) {
    const std::string& name = e.items[1].atom;
    const SExpr& value = e.items.back();
    long long v = 0;
    bool ok = false;
    if (value.is_atom) {
      auto [p, ec] = std::from_chars(value.atom.data(), value.atom.data() + value.atom.size(), v);
      ok = ec == std::errc() && p == value.atom.data() + value.atom.size();
    } else if (value.items.size() == 2 && value.items[0].atom == "-" && value.items[1].is_atom) {
      auto& a = value.items[1].atom;
      auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
      ok = ec == std::errc() && p == a.data() + a.size();
      v = -v;
    }
    if (ok) {
      out[name] = v;
      return;
    }
  }
  for (const auto& item : e.items) collect_define_funs(item, out);
}

Code decode_smt(const ConstraintDocument& doc, std::string_view model_text) {
  std::string cleaned{model_text};
  if (cleaned.find("unsat") != std::string::npos &&
      cleaned.find("define-fun") == std::string::npos)
    throw NoModelError("no model present: solver reported unsat");
  std::map<std::string, long long> values;
  for (const auto& e : parse_sexpr_list(cleaned)) collect_define_funs(e, values);
  if (values.empty()) throw NoModelError("no model present in solver output");
  std::vector<std::vector<int>> matrix(static_cast<size_t>(doc.m),
                                       std::vector<int>(static_cast<size_t>(doc.params.n)));
  for (int i = 0; i < doc.m; ++i)
    for (int j = 0; j < doc.params.n; ++j) {
      auto it = values.find(doc.cell_name(i, j));
      if (it == values.end())
        throw std::runtime_error("model is missing a value for " + doc.cell_name(i, j));
      if (it->second < 0 || it->second >= doc.params.b)
        throw std::runtime_error("model value out of range for " + doc.cell_name(i, j));
      matrix[i][j] = static_cast<int>(it->second);
    }
  return matrix_to_code(doc, matrix);
}

}  // namespace

Code decode_assignment(const ConstraintDocument& doc, std::string_view model_text) {
  return doc.kind == DocKind::cnf ? decode_cnf(doc, model_text) : decode_smt(doc, model_text);
}

std::vector<bool> assignment_from_code(const ConstraintDocument& doc, const Code& code) {
  if (doc.kind != DocKind::cnf)
    throw std::invalid_argument("assignments are defined for cnf documents");
  if (code.size() != doc.m || !(code.params() == doc.params))
    throw std::invalid_argument("code does not match the document instance");
  std::vector<bool> value(static_cast<size_t>(doc.num_vars()) + 1, false);
  const auto& words = code.words();
  for (int i = 0; i < doc.m; ++i)
    for (int j = 0; j < doc.params.n; ++j)
      value[doc.cell_var(i, j, words[i].symbols()[j])] = true;
  for (int p = 0; p < doc.m; ++p)
    for (int q = p + 1; q < doc.m; ++q)
      for (int j = 0; j < doc.params.n; ++j)
        value[doc.pair_var(p, q, j)] = words[p].symbols()[j] != words[q].symbols()[j];
  const long long subsets = doc.num_subsets();
  for (int t = 0; t < subsets; ++t) {
    const auto rows = doc.subset_rows(t);
    for (int j = 0; j < doc.params.n; ++j) {
      bool all_diff = true;
      for (size_t u = 0; u < rows.size() && all_diff; ++u)
        for (size_t v = u + 1; v < rows.size(); ++v)
          if (words[rows[u]].symbols()[j] == words[rows[v]].symbols()[j]) {
            all_diff = false;
            break;
          }
      value[doc.subset_var(t, j)] = all_diff;
    }
  }
  return value;
}

bool cnf_satisfied(std::string_view dimacs_text, const std::vector<bool>& assignment) {
  std::istringstream in{std::string(dimacs_text)};
  std::string line;
  bool in_clauses = false;
  bool clause_ok = false;
  bool have_lit = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      in_clauses = true;
      continue;
    }
    if (!in_clauses) continue;
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (!clause_ok) return false;
        clause_ok = false;
        have_lit = false;
        continue;
      }
      have_lit = true;
      const size_t v = static_cast<size_t>(std::abs(lit));
      if (v >= assignment.size()) throw std::invalid_argument("assignment too short");
      if ((lit > 0) == assignment[v]) clause_ok = true;
    }
  }
  (void)have_lit;
  return true;
}

}  // namespace triff
