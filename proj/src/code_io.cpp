#include "triff/code_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace triff {

namespace {

std::string strip(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Code parse_code(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  bool have_header = false;
  CodeParams params;
  std::vector<Word> words;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      int b = 0, k = 0, n = 0;
      if (std::sscanf(line.c_str(), "b=%d k=%d n=%d", &b, &k, &n) != 3)
        fail(lineno, "expected header 'b=<b> k=<k> n=<n>', got '" + line + "'");
      params = CodeParams{b, k, n};
      try {
        params.validate();
      } catch (const std::exception& e) {
        fail(lineno, e.what());
      }
      have_header = true;
      continue;
    }
    try {
      words.push_back(Word::parse(params, line));
    } catch (const std::exception& e) {
      fail(lineno, e.what());
    }
  }
  if (!have_header) throw std::runtime_error("line 1: missing header 'b=<b> k=<k> n=<n>'");
  try {
    return Code(params, std::move(words));
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("invalid code: ") + e.what());
  }
}

std::string render_code(const Code& code) {
  std::string out = "b=" + std::to_string(code.params().b) +
                    " k=" + std::to_string(code.params().k) +
                    " n=" + std::to_string(code.params().n) + "\n";
  for (const auto& w : code.words()) out += w.to_string() + "\n";
  return out;
}

Code read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

void write_code_file(const std::filesystem::path& path, const Code& code) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write code file: " + path.string());
  out << render_code(code);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace triff
