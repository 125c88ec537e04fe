#pragma once

// Core data model: alphabet/arity/length parameters, fixed-length words,
// duplicate-free codes, and the coordinate difference masks used by the
// k-hashing predicate.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triff {

struct CodeParams {
  int b = 3;  // alphabet size, >= 2
  int k = 3;  // hash arity, 2 <= k <= b
  int n = 1;  // word length, >= 1

  // Throws std::invalid_argument when the triple is ill-formed.
  void validate() const;

  // b^n; throws std::overflow_error past 2^62.
  long long total_words() const;

  bool operator==(const CodeParams&) const = default;
};

// Coordinate bitmask of a fixed width. Two inline chunks cover widths up to
// 128; wider masks spill to a heap-backed chunk vector.
class DiffMask {
 public:
  DiffMask() = default;
  explicit DiffMask(int width);

  int width() const { return width_; }
  bool test(int i) const;
  void set(int i);

  DiffMask& operator&=(const DiffMask& o);
  DiffMask& operator|=(const DiffMask& o);
  DiffMask& operator^=(const DiffMask& o);

  bool any() const;
  bool none() const { return !any(); }
  int count() const;

  // Lowest set coordinate, -1 when empty.
  int first_set() const;

  bool operator==(const DiffMask& o) const;

 private:
  static constexpr int kInlineChunks = 2;

  int width_ = 0;
  int nchunks_ = 0;
  std::array<std::uint64_t, kInlineChunks> inline_{};
  std::vector<std::uint64_t> heap_;

  std::uint64_t* data() { return nchunks_ <= kInlineChunks ? inline_.data() : heap_.data(); }
  const std::uint64_t* data() const {
    return nchunks_ <= kInlineChunks ? inline_.data() : heap_.data();
  }

  friend DiffMask diff_mask(const class Word& x, const class Word& y);
};

// Fixed-length word over {0..b-1}. Alongside the symbol sequence it keeps
// per-symbol coordinate masks (one plane per alphabet letter, for alphabets
// up to 64) so difference masks reduce to a few XOR/OR chunk operations.
class Word {
 public:
  Word() = default;
  Word(const CodeParams& params, std::vector<std::uint16_t> symbols);

  // Parses contiguous digits; alphabet must be at most 10.
  static Word parse(const CodeParams& params, std::string_view digits);

  const std::vector<std::uint16_t>& symbols() const { return symbols_; }
  int length() const { return static_cast<int>(symbols_.size()); }

  // Digit rendering; throws when some symbol is 10 or larger.
  std::string to_string() const;

  const std::vector<DiffMask>& planes() const { return planes_; }

  std::strong_ordering operator<=>(const Word& o) const {
    return std::lexicographical_compare_three_way(symbols_.begin(), symbols_.end(),
                                                  o.symbols_.begin(), o.symbols_.end());
  }
  bool operator==(const Word& o) const { return symbols_ == o.symbols_; }

 private:
  static constexpr int kPlaneLimit = 64;

  std::vector<std::uint16_t> symbols_;
  std::vector<DiffMask> planes_;
};

// Bitmask of the coordinates where x and y differ. Symmetric, zero only for
// equal words. Requires equal lengths.
DiffMask diff_mask(const Word& x, const Word& y);

// Duplicate-free collection of equal-length words, stored sorted ascending.
// Duplicates are rejected at construction rather than silently removed.
class Code {
 public:
  explicit Code(CodeParams params, std::vector<Word> words = {});

  const CodeParams& params() const { return params_; }
  const std::vector<Word>& words() const { return words_; }
  int size() const { return static_cast<int>(words_.size()); }

  bool operator==(const Code& o) const {
    return params_ == o.params_ && words_ == o.words_;
  }

 private:
  CodeParams params_;
  std::vector<Word> words_;  // strictly increasing
};

// True iff some coordinate holds k pairwise-distinct symbols, computed as a
// nonzero AND over the C(k,2) pairwise difference masks. Expects exactly k
// words of length n over alphabet b; the words need not be distinct.
bool is_hashed(std::span<const Word> words, const CodeParams& params);

// First (lexicographically smallest, ascending) k-tuple of word indices that
// is not hashed, or nullopt when the code is a (b,k)-hash code. Codes with
// fewer than k words pass vacuously.
std::optional<std::vector<int>> first_violation(const Code& code);

// Coordinate-wise product: position i carries the k-tuple of input symbols,
// encoded big-endian (first word most significant digit) into one symbol of
// the alphabet of size b^k. Requires b^k <= 65536.
std::pair<CodeParams, Word> product_word(std::span<const Word> words, const CodeParams& params);

}  // namespace triff
