#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triff/bounds.hpp"
#include "triff/code_io.hpp"
#include "triff/dpll.hpp"
#include "triff/embedding.hpp"
#include "triff/encoders.hpp"
#include "triff/msolab/ef.hpp"
#include "triff/msolab/eval.hpp"
#include "triff/msolab/sample.hpp"
#include "triff/msolab/structure_io.hpp"
#include "triff/searcher.hpp"
#include "triff/smt_eval.hpp"

namespace py = pybind11;

namespace {

using namespace triff;

CodeParams make_params(int b, int k, int n) {
  CodeParams p{b, k, n};
  p.validate();
  return p;
}

std::vector<Word> parse_words(const CodeParams& p, const std::vector<std::string>& words) {
  std::vector<Word> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(Word::parse(p, w));
  return out;
}

std::vector<std::string> word_strings(const Code& code) {
  std::vector<std::string> out;
  out.reserve(code.words().size());
  for (const auto& w : code.words()) out.push_back(w.to_string());
  return out;
}

SearchConfig make_config(std::uint64_t budget_nodes, double budget_secs,
                         const std::string& symmetry, bool deterministic, int threads) {
  SearchConfig c;
  if (budget_nodes > 0) c.budget.max_nodes = budget_nodes;
  if (budget_secs > 0) c.budget.max_seconds = budget_secs;
  if (symmetry == "none") c.symmetry = SymmetryLevel::none;
  else if (symmetry == "first-row") c.symmetry = SymmetryLevel::fix_first_row;
  else if (symmetry == "row-lex") c.symmetry = SymmetryLevel::fix_first_row_lex;
  else if (symmetry == "full") c.symmetry = SymmetryLevel::full;
  else throw std::invalid_argument("symmetry must be none, first-row, row-lex or full");
  c.deterministic = deterministic;
  c.threads = threads;
  return c;
}

py::dict stats_dict(const SearchStats& s) {
  py::dict d;
  d["nodes"] = s.nodes;
  d["seconds"] = s.seconds;
  d["peak_depth"] = s.peak_depth;
  return d;
}

}  // namespace

PYBIND11_MODULE(_triff, m) {
  m.doc() = "workbench for (b,k)-hash codes and the finite-model lab";

  // hashing predicates
  m.def(
      "is_hashed",
      [](const std::vector<std::string>& words, int b, int k, int n) {
        const CodeParams p = make_params(b, k, n);
        return is_hashed(parse_words(p, words), p);
      },
      py::arg("words"), py::arg("b"), py::arg("k"), py::arg("n"));
  m.def(
      "first_violation",
      [](const std::vector<std::string>& words, int b, int k, int n)
          -> std::optional<std::vector<int>> {
        const CodeParams p = make_params(b, k, n);
        return first_violation(Code(p, parse_words(p, words)));
      },
      py::arg("words"), py::arg("b"), py::arg("k"), py::arg("n"));
  m.def(
      "product_word",
      [](const std::vector<std::string>& words, int b, int k, int n) {
        const CodeParams p = make_params(b, k, n);
        const auto [prod, word] = product_word(parse_words(p, words), p);
        return py::make_tuple(prod.b, std::vector<int>(word.symbols().begin(), word.symbols().end()));
      },
      py::arg("words"), py::arg("b"), py::arg("k"), py::arg("n"));

  // embedding
  m.def("ternary_to_binary", [](const std::string& w) { return ternary_to_binary(w); });
  m.def("binary_to_ternary", [](const std::string& w) { return binary_to_ternary(w); });
  m.def("relation_r",
        [](const std::string& x, const std::string& y, const std::string& z) {
          return relation_r(x, y, z);
        });
  m.def("witness_family", [](int n, int ell) {
    const WitnessTriple t = witness_family(n, ell);
    return py::make_tuple(t.x, t.y, t.z);
  });

  // search
  m.def(
      "brute_force_max",
      [](int b, int k, int n) {
        const auto [size, cert] = brute_force_max(make_params(b, k, n));
        return py::make_tuple(size, word_strings(cert));
      },
      py::arg("b"), py::arg("k"), py::arg("n"));
  m.def(
      "search_exact",
      [](int b, int k, int n, int m, std::uint64_t budget_nodes, double budget_secs,
         const std::string& symmetry, bool deterministic, int threads) {
        const SearchVerdict v = search_exact(
            make_params(b, k, n), m,
            make_config(budget_nodes, budget_secs, symmetry, deterministic, threads));
        py::dict d;
        d["verdict"] = v.kind == SearchVerdict::Kind::found        ? "found"
                       : v.kind == SearchVerdict::Kind::exhausted ? "does-not-exist"
                                                                   : "budget-exceeded";
        d["certificate"] =
            v.certificate ? py::object(py::cast(word_strings(*v.certificate))) : py::none();
        d["stats"] = stats_dict(v.stats);
        return d;
      },
      py::arg("b"), py::arg("k"), py::arg("n"), py::arg("m"), py::arg("budget_nodes") = 0,
      py::arg("budget_secs") = 0.0, py::arg("symmetry") = "full",
      py::arg("deterministic") = true, py::arg("threads") = 0);
  m.def(
      "max_size",
      [](int b, int k, int n, std::uint64_t budget_nodes, double budget_secs,
         const std::string& symmetry, bool deterministic, int threads) {
        const MaxSizeResult r = max_size(
            make_params(b, k, n),
            make_config(budget_nodes, budget_secs, symmetry, deterministic, threads));
        py::dict d;
        d["lower"] = r.lower;
        d["upper"] = r.upper;
        d["status"] = r.status == MaxSizeResult::Status::exact ? "exact" : "bounded";
        d["certificate"] =
            r.certificate ? py::object(py::cast(word_strings(*r.certificate))) : py::none();
        d["stats"] = stats_dict(r.stats);
        return d;
      },
      py::arg("b"), py::arg("k"), py::arg("n"), py::arg("budget_nodes") = 0,
      py::arg("budget_secs") = 0.0, py::arg("symmetry") = "full",
      py::arg("deterministic") = true, py::arg("threads") = 0);
  m.def(
      "canonicalize",
      [](const std::vector<std::string>& words, int b, int k, int n) {
        const CodeParams p = make_params(b, k, n);
        return word_strings(canonicalize(Code(p, parse_words(p, words))));
      },
      py::arg("words"), py::arg("b"), py::arg("k"), py::arg("n"));

  // encoders
  m.def(
      "emit_dimacs",
      [](int b, int k, int n, int m) { return emit_dimacs(make_params(b, k, n), m).text; },
      py::arg("b"), py::arg("k"), py::arg("n"), py::arg("m"));
  m.def(
      "emit_smtlib",
      [](int b, int k, int n, int m) { return emit_smtlib(make_params(b, k, n), m).text; },
      py::arg("b"), py::arg("k"), py::arg("n"), py::arg("m"));
  m.def(
      "decode_assignment",
      [](const std::string& doc_text, const std::string& model_text) {
        return word_strings(decode_assignment(parse_document(doc_text), model_text));
      },
      py::arg("document"), py::arg("model"));
  m.def(
      "dpll_solve",
      [](const std::string& dimacs) -> std::optional<std::vector<bool>> {
        return dpll_solve_dimacs(dimacs);
      },
      py::arg("dimacs"));
  m.def(
      "smt_find_model",
      [](const std::string& text) -> py::object {
        const auto model = smt_find_model(text);
        if (!model) return py::none();
        return py::cast(render_smt_model(*model));
      },
      py::arg("smtlib"));

  // bounds
  m.def("classic_upper", &classic_upper, py::arg("n"), py::arg("c"));
  m.def("improved_upper", &improved_upper, py::arg("n"), py::arg("c"));
  m.def("km_lower", &km_lower, py::arg("n"), py::arg("c"));

  // finite-model lab
  using msolab::LabStructure;
  py::class_<LabStructure>(m, "LabStructure")
      .def_static("word", &LabStructure::word, py::arg("length"), py::arg("alphabet") = 0,
                  py::arg("letters") = std::vector<int>{})
      .def_static("full_tree", &LabStructure::full_tree, py::arg("branching"), py::arg("depth"))
      .def_static("tree_from_nodes", &LabStructure::tree_from_nodes, py::arg("branching"),
                  py::arg("nodes"))
      .def("with_constant", &LabStructure::with_constant)
      .def("with_set", &LabStructure::with_set)
      .def("with_letters", &LabStructure::with_letters)
      .def("restrict_to_branch", &LabStructure::restrict_to_branch)
      .def("size", &LabStructure::size)
      .def("node_names", &LabStructure::node_names)
      .def("render", [](const LabStructure& s) { return msolab::render_structure(s); });
  m.def("parse_structure", [](const std::string& text) { return msolab::parse_structure(text); });
  m.def(
      "evaluate",
      [](const LabStructure& s, const std::string& formula,
         const std::map<std::string, int>& points,
         const std::map<std::string, std::uint64_t>& sets, int guard) {
        msolab::Assignment a;
        a.points = points;
        a.sets = sets;
        return msolab::evaluate(s, msolab::parse_formula(formula), a, guard);
      },
      py::arg("structure"), py::arg("formula"), py::arg("points") = std::map<std::string, int>{},
      py::arg("sets") = std::map<std::string, std::uint64_t>{}, py::arg("guard") = 14);
  m.def(
      "quantifier_rank",
      [](const std::string& formula) { return msolab::parse_formula(formula).quantifier_rank(); },
      py::arg("formula"));
  m.def(
      "ef_equivalent",
      [](const LabStructure& a, const LabStructure& b, int rho) {
        return msolab::ef_equivalent(a, b, rho);
      },
      py::arg("left"), py::arg("right"), py::arg("rank"));
  m.def(
      "ef_game_search",
      [](const LabStructure& a, const LabStructure& b, int rho) {
        const msolab::GameTrace t = msolab::ef_game_search(a, b, rho);
        return py::make_tuple(t.winner == msolab::Player::bob ? "bob" : "alice",
                              msolab::render_trace(t, a, b));
      },
      py::arg("left"), py::arg("right"), py::arg("rank"));
  m.def(
      "sample_sentences",
      [](const LabStructure& like, int rho, int count, std::uint64_t seed) {
        std::vector<std::string> out;
        for (const auto& f :
             msolab::sample_sentences(msolab::Vocabulary::of(like), rho, count, seed))
          out.push_back(msolab::render_formula(f));
        return out;
      },
      py::arg("like"), py::arg("rank"), py::arg("count"), py::arg("seed"));
}
