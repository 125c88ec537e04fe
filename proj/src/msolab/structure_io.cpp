#include "triff/msolab/structure_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace triff::msolab {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::string node_text(const LabStructure& s, int v) {
  if (s.shape() == Shape::word) return s.node_names()[v];
  return s.node_names()[v].empty() ? "e" : s.node_names()[v];
}

int lookup_element(const LabStructure& s, const std::string& token, int line) {
  std::string name = token;
  if (s.shape() == Shape::tree && name == "e") name = "";
  const int v = s.node_index(name);
  if (v < 0) fail(line, "unknown element '" + token + "'");
  return v;
}

}  // namespace

LabStructure parse_structure(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;

  bool have_header = false;
  std::optional<Shape> shape;
  int length = -1, branching = -1, depth = -1, alphabet = 0;
  std::optional<std::vector<std::string>> nodes;
  std::string letters_line;
  int letters_lineno = 0;
  std::vector<std::tuple<std::string, std::string, int>> constants;  // name, element, line
  std::vector<std::tuple<std::string, std::string, int>> sets;       // name, csv, line

  while (std::getline(in, raw)) {
    ++lineno;
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ')) raw.pop_back();
    if (raw.empty() || raw[0] == '#') continue;
    if (!have_header) {
      if (raw != "triff-structure v1") fail(lineno, "expected header 'triff-structure v1'");
      have_header = true;
      continue;
    }
    std::istringstream ls(raw);
    std::string key;
    ls >> key;
    if (key == "shape") {
      std::string v;
      ls >> v;
      if (v == "word") shape = Shape::word;
      else if (v == "tree") shape = Shape::tree;
      else fail(lineno, "shape must be word or tree");
    } else if (key == "length") {
      if (!(ls >> length)) fail(lineno, "length needs an integer");
    } else if (key == "branching") {
      if (!(ls >> branching)) fail(lineno, "branching needs an integer");
    } else if (key == "depth") {
      if (!(ls >> depth)) fail(lineno, "depth needs an integer");
    } else if (key == "nodes") {
      std::string rest;
      std::getline(ls, rest);
      nodes = std::vector<std::string>{};
      for (auto& tok : split_csv(rest)) nodes->push_back(tok == "e" ? "" : tok);
    } else if (key == "alphabet") {
      if (!(ls >> alphabet)) fail(lineno, "alphabet needs an integer");
    } else if (key == "letters") {
      std::getline(ls, letters_line);
      letters_lineno = lineno;
    } else if (key == "constant") {
      std::string name, elem;
      if (!(ls >> name >> elem)) fail(lineno, "constant needs a name and an element");
      constants.emplace_back(name, elem, lineno);
    } else if (key == "set") {
      std::string name, rest;
      if (!(ls >> name)) fail(lineno, "set needs a name");
      std::getline(ls, rest);
      sets.emplace_back(name, rest, lineno);
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_header) throw std::runtime_error("line 1: missing header 'triff-structure v1'");
  if (!shape) throw std::runtime_error("missing 'shape' line");

  LabStructure s = [&] {
    try {
      if (*shape == Shape::word) {
        if (length < 0) throw std::invalid_argument("word structures need a length");
        return LabStructure::word(length);
      }
      if (branching < 0) throw std::invalid_argument("tree structures need a branching");
      if (nodes) return LabStructure::tree_from_nodes(branching, *nodes);
      if (depth < 0) throw std::invalid_argument("tree structures need a depth or a node list");
      return LabStructure::full_tree(branching, depth);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(e.what());
    }
  }();

  if (alphabet > 0) {
    std::vector<int> letters(static_cast<size_t>(s.size()), 0);
    if (!letters_line.empty()) {
      const auto toks = split_csv(letters_line);
      if (s.shape() == Shape::word) {
        if (static_cast<int>(toks.size()) != s.size())
          fail(letters_lineno, "need one letter per position");
        for (size_t i = 0; i < toks.size(); ++i) {
          try {
            letters[i] = std::stoi(toks[i]);
          } catch (...) {
            fail(letters_lineno, "bad letter '" + toks[i] + "'");
          }
        }
      } else {
        std::map<int, int> by_node;
        for (const auto& tok : toks) {
          const size_t colon = tok.find(':');
          if (colon == std::string::npos) fail(letters_lineno, "tree letters use node:letter");
          const int v = lookup_element(s, tok.substr(0, colon), letters_lineno);
          try {
            by_node[v] = std::stoi(tok.substr(colon + 1));
          } catch (...) {
            fail(letters_lineno, "bad letter in '" + tok + "'");
          }
        }
        if (static_cast<int>(by_node.size()) != s.size())
          fail(letters_lineno, "need one letter per node");
        for (const auto& [v, l] : by_node) letters[v] = l;
      }
    }
    try {
      s = s.with_letters(std::move(letters), alphabet);
    } catch (const std::invalid_argument& e) {
      fail(letters_lineno ? letters_lineno : lineno, e.what());
    }
  } else if (!letters_line.empty()) {
    fail(letters_lineno, "letters given without an alphabet");
  }

  for (const auto& [name, elem, line] : constants) {
    try {
      s = s.with_constant(name, lookup_element(s, elem, line));
    } catch (const std::invalid_argument& e) {
      fail(line, e.what());
    }
  }
  for (const auto& [name, csv, line] : sets) {
    std::uint64_t members = 0;
    for (const auto& tok : split_csv(csv)) {
      if (tok.empty()) continue;
      members |= std::uint64_t{1} << lookup_element(s, tok, line);
    }
    try {
      s = s.with_set(name, members);
    } catch (const std::invalid_argument& e) {
      fail(line, e.what());
    }
  }
  return s;
}

std::string render_structure(const LabStructure& s) {
  std::string out = "triff-structure v1\n";
  if (s.shape() == Shape::word) {
    out += "shape word\nlength " + std::to_string(s.size()) + "\n";
  } else {
    out += "shape tree\nbranching " + std::to_string(s.branching()) + "\nnodes ";
    for (int v = 0; v < s.size(); ++v) {
      if (v) out += ",";
      out += node_text(s, v);
    }
    out += "\n";
  }
  if (s.has_letters()) {
    out += "alphabet " + std::to_string(s.alphabet()) + "\nletters ";
    for (int v = 0; v < s.size(); ++v) {
      if (v) out += ",";
      if (s.shape() == Shape::tree) out += node_text(s, v) + ":";
      out += std::to_string(s.letter(v));
    }
    out += "\n";
  }
  for (const auto& [name, e] : s.constants()) {
    if (s.shape() == Shape::tree && name == "root") continue;  // implied
    out += "constant " + name + " " + node_text(s, e) + "\n";
  }
  for (const auto& [name, members] : s.sets()) {
    out += "set " + name + " ";
    bool first = true;
    for (int v = 0; v < s.size(); ++v)
      if ((members >> v) & 1) {
        if (!first) out += ",";
        out += node_text(s, v);
        first = false;
      }
    out += "\n";
  }
  return out;
}

LabStructure read_structure_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open structure file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

void write_structure_file(const std::filesystem::path& path, const LabStructure& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write structure file: " + path.string());
  out << render_structure(s);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace triff::msolab
