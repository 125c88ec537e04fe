#include "triff/cli.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "triff/bounds.hpp"
#include "triff/code_io.hpp"
#include "triff/embedding.hpp"
#include "triff/encoders.hpp"
#include "triff/ledger.hpp"
#include "triff/msolab/ef.hpp"
#include "triff/msolab/eval.hpp"
#include "triff/msolab/structure_io.hpp"
#include "triff/searcher.hpp"

namespace triff::cli {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SymmetryLevel parse_symmetry(const std::string& name) {
  if (name == "none") return SymmetryLevel::none;
  if (name == "first-row") return SymmetryLevel::fix_first_row;
  if (name == "row-lex") return SymmetryLevel::fix_first_row_lex;
  if (name == "full") return SymmetryLevel::full;
  throw CLI::ValidationError("--symmetry", "expected none, first-row, row-lex or full");
}

struct SearchFlags {
  int b = 3, k = 3, n = 1;
  std::uint64_t budget_nodes = 0;  // 0 = unlimited
  double budget_secs = 0.0;        // 0 = unlimited
  std::string symmetry = "full";
  bool deterministic = false;
  int threads = 0;
  std::string out;

  SearchConfig config() const {
    SearchConfig c;
    if (budget_nodes > 0) c.budget.max_nodes = budget_nodes;
    if (budget_secs > 0) c.budget.max_seconds = budget_secs;
    c.symmetry = parse_symmetry(symmetry);
    c.deterministic = deterministic;
    c.threads = threads;
    return c;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--b", b, "alphabet size")->required();
    cmd->add_option("--k", k, "hash arity")->required();
    cmd->add_option("--n", n, "word length")->required();
    cmd->add_option("--budget-nodes", budget_nodes, "node limit (0 = unlimited)");
    cmd->add_option("--budget-secs", budget_secs, "wall-clock limit in seconds (0 = unlimited)");
    cmd->add_option("--symmetry", symmetry, "none, first-row, row-lex or full")
        ->default_str("full");
    cmd->add_flag("--deterministic", deterministic,
                  "serialize subtrees for reproducible runs");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", out, "write the certificate to this path");
  }
};

void print_stats(const SearchStats& stats) {
  std::cout << "nodes: " << stats.nodes << "\n";
  std::cout << "seconds: " << stats.seconds << "\n";
  std::cout << "peak-depth: " << stats.peak_depth << "\n";
}

int emit_certificate(const Code& code, const std::string& out) {
  if (!out.empty()) {
    write_code_file(out, code);
    std::cout << "certificate: " << out << "\n";
  } else {
    std::cout << render_code(code);
  }
  return kOk;
}

int cmd_verify(const std::string& path) {
  const Code code = read_code_file(path);
  if (auto bad = first_violation(code)) {
    std::cout << "k-hash: no\n";
    std::cout << "violation: rows";
    for (int r : *bad) std::cout << " " << (r + 1);
    std::cout << " (1-based) have no coordinate with pairwise-distinct symbols\n";
    return kVerifyFail;
  }
  std::cout << "k-hash: yes\n";
  return kOk;
}

int cmd_search(const SearchFlags& flags, int size, bool prove_optimal) {
  const CodeParams params{flags.b, flags.k, flags.n};
  const SearchVerdict v = search_exact(params, size, flags.config());
  print_stats(v.stats);
  switch (v.kind) {
    case SearchVerdict::Kind::exhausted:
      std::cout << "verdict: does-not-exist\n";
      return kNo;
    case SearchVerdict::Kind::budget_exceeded:
      std::cout << "verdict: budget-exceeded\n";
      return kBudget;
    case SearchVerdict::Kind::found:
      break;
  }
  std::cout << "verdict: found\n";
  emit_certificate(*v.certificate, flags.out);
  if (prove_optimal) {
    const SearchVerdict up = search_exact(params, size + 1, flags.config());
    if (up.kind == SearchVerdict::Kind::exhausted) {
      std::cout << "optimal: yes\n";
    } else if (up.kind == SearchVerdict::Kind::found) {
      std::cout << "optimal: no (a code with " << (size + 1) << " words exists)\n";
    } else {
      std::cout << "optimal: unknown (budget exceeded)\n";
      return kBudget;
    }
  }
  return kOk;
}

int cmd_maxsize(const SearchFlags& flags) {
  const CodeParams params{flags.b, flags.k, flags.n};
  const MaxSizeResult r = max_size(params, flags.config());
  print_stats(r.stats);
  std::cout << "lower: " << r.lower << "\n";
  std::cout << "upper: " << r.upper << "\n";
  std::cout << "status: " << (r.status == MaxSizeResult::Status::exact ? "exact" : "bounded")
            << "\n";
  if (r.certificate) emit_certificate(*r.certificate, flags.out);
  return r.status == MaxSizeResult::Status::exact ? kOk : kBudget;
}

int cmd_encode(const std::string& format, int b, int k, int n, int size,
               const std::string& out) {
  const CodeParams params{b, k, n};
  ConstraintDocument doc;
  if (format == "dimacs") doc = emit_dimacs(params, size);
  else if (format == "smtlib2") doc = emit_smtlib(params, size);
  else throw CLI::ValidationError("--format", "expected dimacs or smtlib2");
  if (out.empty()) {
    std::cout << doc.text;
  } else {
    write_file(out, doc.text);
    std::cout << "wrote " << out << ": " << doc.num_vars() << " variables";
    if (doc.kind == DocKind::cnf) std::cout << ", " << doc.num_clauses() << " clauses";
    std::cout << "\n";
  }
  return kOk;
}

int cmd_decode(const std::string& doc_path, const std::string& model_path,
               const std::string& out) {
  const ConstraintDocument doc = parse_document(read_file(doc_path));
  const Code code = decode_assignment(doc, read_file(model_path));
  std::cout << render_code(code);
  std::cout << "verified: yes\n";
  if (!out.empty()) write_code_file(out, code);
  return kOk;
}

int cmd_bounds(int n, double c_upper, double c_improved, double c_lower) {
  std::cout << "classic-upper: " << classic_upper(n, c_upper) << "\n";
  std::cout << "improved-upper: " << improved_upper(n, c_improved) << "\n";
  std::cout << "km-lower: " << km_lower(n, c_lower) << "\n";
  return kOk;
}

int cmd_witness(int n, int ell) {
  const WitnessTriple t = witness_family(n, ell);
  std::cout << "X: " << t.x << "\n";
  std::cout << "Y: " << t.y << "\n";
  std::cout << "Z: " << t.z << "\n";
  return kOk;
}

int cmd_ef(const std::string& left, const std::string& right, int rank, bool trace) {
  const msolab::LabStructure a = msolab::read_structure_file(left);
  const msolab::LabStructure b = msolab::read_structure_file(right);
  const bool equivalent = msolab::ef_equivalent(a, b, rank);
  std::cout << "equivalent: " << (equivalent ? "yes" : "no") << "\n";
  if (trace) {
    const msolab::GameTrace t = msolab::ef_game_search(a, b, rank);
    std::cout << msolab::render_trace(t, a, b);
  }
  return equivalent ? kOk : kNo;
}

int cmd_mso_eval(const std::string& structure_path, const std::string& formula_path) {
  const msolab::LabStructure s = msolab::read_structure_file(structure_path);
  const msolab::MsoFormula f = msolab::parse_formula(read_file(formula_path));
  const bool result = msolab::evaluate(s, f);
  std::cout << "result: " << (result ? "true" : "false") << "\n";
  return result ? kOk : kNo;
}

struct LedgerAddFlags {
  int b = 3, k = 3, n = 1;
  int lower = 0, upper = 0;
  std::string status = "exact";
  std::string cert;
  std::string method = "search";
  std::string time;
};

int cmd_ledger_add(const std::string& file, const LedgerAddFlags& f) {
  LedgerEntry e;
  e.key = CodeParams{f.b, f.k, f.n};
  e.lower = f.lower;
  e.upper = f.upper;
  if (f.status == "exact") e.status = LedgerEntry::Status::exact;
  else if (f.status == "bounded") e.status = LedgerEntry::Status::bounded;
  else throw CLI::ValidationError("--status", "expected exact or bounded");
  e.certificate_path = f.cert;
  if (f.method == "oracle") e.method = LedgerEntry::Method::oracle;
  else if (f.method == "search") e.method = LedgerEntry::Method::search;
  else if (f.method == "external-solver") e.method = LedgerEntry::Method::external_solver;
  else throw CLI::ValidationError("--method", "expected oracle, search or external-solver");
  e.timestamp = f.time.empty() ? ledger_timestamp() : f.time;
  e.validate();

  auto entries = ledger_load(file);
  bool replaced = false;
  for (auto& existing : entries)
    if (existing.key == e.key) {
      existing = e;
      replaced = true;
      break;
    }
  if (!replaced) entries.push_back(e);
  ledger_save(file, std::move(entries));
  std::cout << (replaced ? "updated " : "added ") << f.b << "," << f.k << "," << f.n << "\n";
  return kOk;
}

int cmd_ledger_check(const std::string& file, bool recompute) {
  const auto entries = ledger_load(file);
  LedgerCheckOptions options;
  options.base_dir = std::filesystem::path(file).parent_path();
  if (options.base_dir.empty()) options.base_dir = ".";
  options.recompute = recompute;
  const LedgerReport report = ledger_check(entries, options);
  if (report.consistent()) {
    std::cout << "consistent: " << entries.size() << " entries\n";
    return kOk;
  }
  for (const auto& f : report.findings)
    std::cout << "inconsistent " << f.key << ": " << f.message << "\n";
  return kVerifyFail;
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"workbench for (b,k)-hash codes and the finite-model lab"};
  app.name("triff");
  app.require_subcommand(1);

  int rc = kOk;
  auto guard = [&rc](auto body) {
    return [&rc, body]() {
      try {
        rc = body();
      } catch (const NoModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = kNo;
      } catch (const VerificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = kVerifyFail;
      }
      // everything else unwinds to the dispatcher below
    };
  };

  // verify
  auto* verify = app.add_subcommand("verify", "check a code file for the k-hash property");
  auto verify_path = std::make_shared<std::string>();
  verify->add_option("codefile", *verify_path, "code file")->required();
  verify->callback(guard([verify_path] { return cmd_verify(*verify_path); }));

  // search
  auto* search = app.add_subcommand("search", "look for a code of an exact size");
  auto search_flags = std::make_shared<SearchFlags>();
  auto search_size = std::make_shared<int>(1);
  auto prove_optimal = std::make_shared<bool>(false);
  search_flags->attach(search);
  search->add_option("--size", *search_size, "target number of codewords")->required();
  search->add_flag("--prove-optimal", *prove_optimal, "also try to exhaust size+1");
  search->callback(guard([search_flags, search_size, prove_optimal] {
    return cmd_search(*search_flags, *search_size, *prove_optimal);
  }));

  // maxsize
  auto* maxsize = app.add_subcommand("maxsize", "maximum code size by iterated search");
  auto maxsize_flags = std::make_shared<SearchFlags>();
  maxsize_flags->attach(maxsize);
  maxsize->callback(guard([maxsize_flags] { return cmd_maxsize(*maxsize_flags); }));

  // encode
  auto* encode = app.add_subcommand("encode", "emit a solver document for the existence question");
  auto enc_format = std::make_shared<std::string>("dimacs");
  auto enc = std::make_shared<std::array<int, 4>>(std::array<int, 4>{3, 3, 1, 3});
  auto enc_out = std::make_shared<std::string>();
  encode->add_option("--format", *enc_format, "dimacs or smtlib2")->required();
  encode->add_option("--b", (*enc)[0], "alphabet size")->required();
  encode->add_option("--k", (*enc)[1], "hash arity")->required();
  encode->add_option("--n", (*enc)[2], "word length")->required();
  encode->add_option("--size", (*enc)[3], "number of rows")->required();
  encode->add_option("--out", *enc_out, "output path (default: stdout)");
  encode->callback(guard([enc_format, enc, enc_out] {
    return cmd_encode(*enc_format, (*enc)[0], (*enc)[1], (*enc)[2], (*enc)[3], *enc_out);
  }));

  // decode
  auto* decode = app.add_subcommand("decode", "decode a solver model into a verified code");
  auto dec_doc = std::make_shared<std::string>();
  auto dec_model = std::make_shared<std::string>();
  auto dec_out = std::make_shared<std::string>();
  decode->add_option("--doc", *dec_doc, "emitted document")->required();
  decode->add_option("--model", *dec_model, "solver output")->required();
  decode->add_option("--out", *dec_out, "also write the code here");
  decode->callback(guard([dec_doc, dec_model, dec_out] {
    return cmd_decode(*dec_doc, *dec_model, *dec_out);
  }));

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the bound formulas");
  auto bounds_n = std::make_shared<int>(1);
  auto cu = std::make_shared<double>(2.0);
  auto ci = std::make_shared<double>(1.0);
  auto cl = std::make_shared<double>(1.0);
  bounds_cmd->add_option("--n", *bounds_n, "length")->required();
  bounds_cmd->add_option("--C-upper", *cu, "constant for the classic upper bound");
  bounds_cmd->add_option("--C-improved", *ci, "constant for the improved upper bound");
  bounds_cmd->add_option("--C-lower", *cl, "constant for the lower bound");
  bounds_cmd->callback(
      guard([bounds_n, cu, ci, cl] { return cmd_bounds(*bounds_n, *cu, *ci, *cl); }));

  // witness
  auto* witness = app.add_subcommand("witness", "print a witness word triple");
  auto wn = std::make_shared<int>(0);
  auto wl = std::make_shared<int>(1);
  witness->add_option("--n", *wn, "block position of the relating blocks")->required();
  witness->add_option("--ell", *wl, "half-length of the words")->required();
  witness->callback(guard([wn, wl] { return cmd_witness(*wn, *wl); }));

  // ef
  auto* ef = app.add_subcommand("ef", "rank-rho equivalence of two structures");
  auto ef_left = std::make_shared<std::string>();
  auto ef_right = std::make_shared<std::string>();
  auto ef_rank = std::make_shared<int>(0);
  auto ef_trace = std::make_shared<bool>(false);
  ef->add_option("--left", *ef_left, "left structure file")->required();
  ef->add_option("--right", *ef_right, "right structure file")->required();
  ef->add_option("--rank", *ef_rank, "quantifier rank")->required();
  ef->add_flag("--trace", *ef_trace, "print a game line");
  ef->callback(guard([ef_left, ef_right, ef_rank, ef_trace] {
    return cmd_ef(*ef_left, *ef_right, *ef_rank, *ef_trace);
  }));

  // mso-eval
  auto* mso = app.add_subcommand("mso-eval", "evaluate a formula on a structure");
  auto mso_structure = std::make_shared<std::string>();
  auto mso_formula = std::make_shared<std::string>();
  mso->add_option("--structure", *mso_structure, "structure file")->required();
  mso->add_option("--formula", *mso_formula, "formula file")->required();
  mso->callback(guard([mso_structure, mso_formula] {
    return cmd_mso_eval(*mso_structure, *mso_formula);
  }));

  // ledger
  auto* ledger = app.add_subcommand("ledger", "inspect or update the results ledger");
  ledger->require_subcommand(1);
  auto ledger_file = std::make_shared<std::string>("triff.ledger");
  ledger->add_option("--file", *ledger_file, "ledger path")->capture_default_str();

  auto* show = ledger->add_subcommand("show", "print the ledger");
  show->callback(guard([ledger_file] {
    std::cout << render_ledger(ledger_load(*ledger_file));
    return kOk;
  }));

  auto* add = ledger->add_subcommand("add", "insert or replace an entry");
  auto add_flags = std::make_shared<LedgerAddFlags>();
  add->add_option("--b", add_flags->b)->required();
  add->add_option("--k", add_flags->k)->required();
  add->add_option("--n", add_flags->n)->required();
  add->add_option("--lower", add_flags->lower)->required();
  add->add_option("--upper", add_flags->upper)->required();
  add->add_option("--status", add_flags->status, "exact or bounded")->required();
  add->add_option("--cert", add_flags->cert, "certificate path (relative to the ledger)");
  add->add_option("--method", add_flags->method, "oracle, search or external-solver");
  add->add_option("--time", add_flags->time, "ISO-8601 timestamp (default: now)");
  add->callback(guard([ledger_file, add_flags] { return cmd_ledger_add(*ledger_file, *add_flags); }));

  auto* check = ledger->add_subcommand("check", "re-verify certificates and bounds");
  auto recompute = std::make_shared<bool>(false);
  check->add_flag("--recompute", *recompute, "recompute exact values");
  check->callback(guard([ledger_file, recompute] {
    return cmd_ledger_check(*ledger_file, *recompute);
  }));

  std::vector<const char*> argv;
  argv.push_back("triff");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}

}  // namespace triff::cli
