#include "triff/embedding.hpp"

#include <stdexcept>
#include <string>

namespace triff {

namespace {

constexpr const char* kBlocks[3] = {"00", "01", "10"};

// Block at 0-based block index t, encoded 0..3; only 0..2 are legal.
int block_at(std::string_view w, int t) {
  const char hi = w[2 * t];
  const char lo = w[2 * t + 1];
  if ((hi != '0' && hi != '1') || (lo != '0' && lo != '1'))
    throw std::invalid_argument("binary word contains a character outside {0,1}");
  return (hi - '0') * 2 + (lo - '0');
}

}  // namespace

BinaryWord ternary_to_binary(std::string_view ternary) {
  BinaryWord out;
  out.reserve(ternary.size() * 2);
  for (char c : ternary) {
    if (c < '0' || c > '2')
      throw std::invalid_argument("ternary word contains a symbol outside {0,1,2}");
    out += kBlocks[c - '0'];
  }
  return out;
}

std::string binary_to_ternary(std::string_view binary) {
  if (binary.size() % 2 != 0)
    throw std::invalid_argument("binary word has odd length");
  std::string out;
  out.reserve(binary.size() / 2);
  const int blocks = static_cast<int>(binary.size() / 2);
  for (int t = 0; t < blocks; ++t) {
    const int code = block_at(binary, t);
    if (code == 3)
      throw std::invalid_argument("block \"11\" at position " + std::to_string(2 * t + 1));
    out.push_back(static_cast<char>('0' + code));
  }
  return out;
}

bool relation_r(std::string_view x, std::string_view y, std::string_view z) {
  if (x.size() != y.size() || y.size() != z.size())
    throw std::invalid_argument("relation requires three words of equal length");
  if (x.size() % 2 != 0)
    throw std::invalid_argument("relation requires even-length words");
  const int blocks = static_cast<int>(x.size() / 2);
  bool witness = false;
  for (int t = 0; t < blocks; ++t) {
    const int bx = block_at(x, t);
    const int by = block_at(y, t);
    const int bz = block_at(z, t);
    if (bx == 3 || by == 3 || bz == 3) return false;  // outside {00,01,10}^*
    if (!witness && bx != by && bx != bz && by != bz) witness = true;
  }
  return witness;
}

WitnessTriple witness_family(int n, int ell) {
  if (n < 0 || n >= ell)
    throw std::invalid_argument("witness family requires 0 <= n < ell");
  WitnessTriple t;
  t.x.reserve(2 * static_cast<size_t>(ell));
  t.y.reserve(2 * static_cast<size_t>(ell));
  t.z.reserve(2 * static_cast<size_t>(ell));
  for (int i = 0; i < n; ++i) {
    t.x += "00";
    t.y += "10";
    t.z += "10";
  }
  t.x += "01";
  t.y += "00";
  t.z += "10";
  for (int i = n + 1; i < ell; ++i) {
    t.x += "00";
    t.y += "00";
    t.z += "00";
  }
  return t;
}

}  // namespace triff
