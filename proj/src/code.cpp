#include "triff/code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace triff {

namespace {

int chunks_for(int width) { return (width + 63) / 64; }

}  // namespace

void CodeParams::validate() const {
  if (b < 2) throw std::invalid_argument("alphabet size b must be at least 2");
  if (n < 1) throw std::invalid_argument("word length n must be at least 1");
  if (k < 2) throw std::invalid_argument("hash arity k must be at least 2");
  if (k > b) throw std::invalid_argument("hash arity k must not exceed alphabet size b");
}

long long CodeParams::total_words() const {
  validate();
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > (1ll << 62) / b) throw std::overflow_error("b^n exceeds 2^62");
    total *= b;
  }
  return total;
}

DiffMask::DiffMask(int width) : width_(width), nchunks_(chunks_for(width)) {
  if (width < 0) throw std::invalid_argument("mask width must be nonnegative");
  if (nchunks_ > kInlineChunks) heap_.assign(static_cast<size_t>(nchunks_), 0);
}

bool DiffMask::test(int i) const {
  return (data()[i >> 6] >> (i & 63)) & 1u;
}

void DiffMask::set(int i) {
  data()[i >> 6] |= std::uint64_t{1} << (i & 63);
}

DiffMask& DiffMask::operator&=(const DiffMask& o) {
  if (o.width_ != width_) throw std::invalid_argument("mask width mismatch");
  for (int c = 0; c < nchunks_; ++c) data()[c] &= o.data()[c];
  return *this;
}

DiffMask& DiffMask::operator|=(const DiffMask& o) {
  if (o.width_ != width_) throw std::invalid_argument("mask width mismatch");
  for (int c = 0; c < nchunks_; ++c) data()[c] |= o.data()[c];
  return *this;
}

DiffMask& DiffMask::operator^=(const DiffMask& o) {
  if (o.width_ != width_) throw std::invalid_argument("mask width mismatch");
  for (int c = 0; c < nchunks_; ++c) data()[c] ^= o.data()[c];
  return *this;
}

bool DiffMask::any() const {
  for (int c = 0; c < nchunks_; ++c)
    if (data()[c]) return true;
  return false;
}

int DiffMask::count() const {
  int total = 0;
  for (int c = 0; c < nchunks_; ++c) total += std::popcount(data()[c]);
  return total;
}

int DiffMask::first_set() const {
  for (int c = 0; c < nchunks_; ++c)
    if (data()[c]) return c * 64 + std::countr_zero(data()[c]);
  return -1;
}

bool DiffMask::operator==(const DiffMask& o) const {
  if (width_ != o.width_) return false;
  for (int c = 0; c < nchunks_; ++c)
    if (data()[c] != o.data()[c]) return false;
  return true;
}

Word::Word(const CodeParams& params, std::vector<std::uint16_t> symbols)
    : symbols_(std::move(symbols)) {
  params.validate();
  if (static_cast<int>(symbols_.size()) != params.n)
    throw std::invalid_argument("word length does not match n");
  for (auto s : symbols_)
    if (s >= params.b) throw std::invalid_argument("symbol out of alphabet range");
  if (params.b <= kPlaneLimit) {
    planes_.assign(static_cast<size_t>(params.b), DiffMask(params.n));
    for (int i = 0; i < params.n; ++i) planes_[symbols_[i]].set(i);
  }
}

Word Word::parse(const CodeParams& params, std::string_view digits) {
  if (params.b > 10) throw std::invalid_argument("digit form requires alphabet size at most 10");
  std::vector<std::uint16_t> symbols;
  symbols.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument(std::string("invalid digit '") + c + "'");
    symbols.push_back(static_cast<std::uint16_t>(c - '0'));
  }
  return Word(params, std::move(symbols));
}

std::string Word::to_string() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto s : symbols_) {
    if (s > 9) throw std::domain_error("symbol too large for digit rendering");
    out.push_back(static_cast<char>('0' + s));
  }
  return out;
}

DiffMask diff_mask(const Word& x, const Word& y) {
  if (x.length() != y.length()) throw std::invalid_argument("word length mismatch");
  DiffMask m(x.length());
  const auto& xp = x.planes();
  const auto& yp = y.planes();
  if (!xp.empty() && xp.size() == yp.size()) {
    // Each differing coordinate shows up in exactly two symbol planes.
    for (size_t s = 0; s < xp.size(); ++s) {
      DiffMask d = xp[s];
      d ^= yp[s];
      m |= d;
    }
    return m;
  }
  for (int i = 0; i < x.length(); ++i)
    if (x.symbols()[i] != y.symbols()[i]) m.set(i);
  return m;
}

Code::Code(CodeParams params, std::vector<Word> words)
    : params_(params), words_(std::move(words)) {
  params_.validate();
  for (const auto& w : words_) {
    if (w.length() != params_.n) throw std::invalid_argument("word length does not match n");
    for (auto s : w.symbols())
      if (s >= params_.b) throw std::invalid_argument("symbol out of alphabet range");
  }
  std::sort(words_.begin(), words_.end());
  if (std::adjacent_find(words_.begin(), words_.end()) != words_.end())
    throw std::invalid_argument("duplicate codeword");
}

bool is_hashed(std::span<const Word> words, const CodeParams& params) {
  params.validate();
  if (static_cast<int>(words.size()) != params.k)
    throw std::invalid_argument("expected exactly k words");
  for (const auto& w : words) {
    if (w.length() != params.n) throw std::invalid_argument("word length does not match n");
    for (auto s : w.symbols())
      if (s >= params.b) throw std::invalid_argument("symbol out of alphabet range");
  }
  DiffMask acc = diff_mask(words[0], words[1]);
  for (size_t i = 0; i < words.size() && acc.any(); ++i)
    for (size_t j = i + 1; j < words.size(); ++j) {
      if (i == 0 && j == 1) continue;
      acc &= diff_mask(words[i], words[j]);
      if (acc.none()) return false;
    }
  return acc.any();
}

std::optional<std::vector<int>> first_violation(const Code& code) {
  const int m = code.size();
  const int k = code.params().k;
  if (m < k) return std::nullopt;
  std::vector<int> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<Word> subset(static_cast<size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = code.words()[idx[i]];
    if (!is_hashed(subset, code.params())) return idx;
    // next combination in lexicographic order
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return std::nullopt;
}

std::pair<CodeParams, Word> product_word(std::span<const Word> words, const CodeParams& params) {
  params.validate();
  if (static_cast<int>(words.size()) != params.k)
    throw std::invalid_argument("expected exactly k words");
  const int n = words[0].length();
  long long alphabet = 1;
  for (int i = 0; i < params.k; ++i) {
    if (words[i].length() != n) throw std::invalid_argument("word length mismatch");
    alphabet *= params.b;
    if (alphabet > 65536) throw std::overflow_error("product alphabet exceeds 65536");
  }
  CodeParams prod{static_cast<int>(alphabet), params.k, n};
  std::vector<std::uint16_t> symbols(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    long long v = 0;
    for (int t = 0; t < params.k; ++t) v = v * params.b + words[t].symbols()[i];
    symbols[i] = static_cast<std::uint16_t>(v);
  }
  return {prod, Word(prod, std::move(symbols))};
}

}  // namespace triff
