#include "triff/sexpr.hpp"

#include <cctype>
#include <stdexcept>

namespace triff {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const int line = line_;
    const int column = column_;
    const char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      advance();
      std::vector<SExpr> items;
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input: missing ')'");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        items.push_back(read());
      }
      SExpr e = SExpr::make_list(std::move(items));
      e.line = line;
      e.column = column;
      return e;
    }
    std::string atom;
    while (pos_ < text_.size()) {
      const char a = text_[pos_];
      if (a == '(' || a == ')' || a == ';' || std::isspace(static_cast<unsigned char>(a))) break;
      atom.push_back(a);
      advance();
    }
    SExpr e = SExpr::make_atom(std::move(atom));
    e.line = line;
    e.column = column;
    return e;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("syntax error at line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + msg);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

SExpr parse_sexpr(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.done()) r.fail("trailing content after expression");
  return e;
}

std::vector<SExpr> parse_sexpr_list(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

std::string render_sexpr(const SExpr& e) {
  if (e.is_atom) return e.atom;
  std::string out = "(";
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    out += render_sexpr(e.items[i]);
  }
  out += ')';
  return out;
}

}  // namespace triff
