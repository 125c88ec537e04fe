#include <doctest.h>

#include <random>
#include <set>

#include "triff/code.hpp"
#include "triff/code_io.hpp"
#include "triff/searcher.hpp"

using namespace triff;

namespace {

std::vector<Word> words_of(const CodeParams& p, const std::vector<std::string>& digits) {
  std::vector<Word> out;
  for (const auto& d : digits) out.push_back(Word::parse(p, d));
  return out;
}

// Independent oracle: direct per-coordinate inspection, no masks.
bool hashed_by_inspection(const CodeParams& p, const std::vector<Word>& words) {
  for (int c = 0; c < p.n; ++c) {
    std::set<int> seen;
    for (const auto& w : words) seen.insert(w.symbols()[c]);
    if (static_cast<int>(seen.size()) == static_cast<int>(words.size())) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_NOTHROW((CodeParams{3, 3, 1}).validate());
  CHECK_NOTHROW((CodeParams{2, 2, 5}).validate());
  CHECK_THROWS_AS((CodeParams{1, 1, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((CodeParams{3, 4, 1}).validate(), std::invalid_argument);  // k > b
  CHECK_THROWS_AS((CodeParams{3, 1, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((CodeParams{3, 3, 0}).validate(), std::invalid_argument);
  CHECK((CodeParams{3, 3, 4}).total_words() == 81);
}

TEST_CASE("diff masks") {
  const CodeParams p{3, 3, 4};
  const Word x = Word::parse(p, "0001");
  const Word y = Word::parse(p, "1111");
  const DiffMask m = diff_mask(x, y);
  CHECK(m.test(0));
  CHECK(m.test(1));
  CHECK(m.test(2));
  CHECK_FALSE(m.test(3));
  CHECK(m.count() == 3);
  CHECK(m.first_set() == 0);
  CHECK(diff_mask(x, x).none());
  CHECK(diff_mask(y, x) == m);

  // chunked path past 128 coordinates
  CodeParams wide{2, 2, 200};
  std::vector<std::uint16_t> a(200, 0), b(200, 0);
  b[199] = 1;
  const DiffMask wm = diff_mask(Word(wide, a), Word(wide, b));
  CHECK(wm.count() == 1);
  CHECK(wm.first_set() == 199);
}

TEST_CASE("is_hashed examples") {
  const CodeParams one{3, 3, 1};
  CHECK(is_hashed(words_of(one, {"0", "1", "2"}), one));

  const CodeParams p{3, 3, 4};
  CHECK(is_hashed(words_of(p, {"0001", "1111", "1211"}), p));
  CHECK_FALSE(is_hashed(words_of(p, {"0100", "1111", "1211"}), p));

  CHECK_FALSE(is_hashed(words_of(one, {"0", "0", "1"}), one));  // duplicates allowed, never hashed

  CHECK_THROWS_AS(is_hashed(words_of(one, {"0", "1"}), one), std::invalid_argument);
  const CodeParams p2{3, 3, 2};
  CHECK_THROWS_AS(is_hashed(words_of(p2, {"00", "11", "22"}), one), std::invalid_argument);
}

TEST_CASE("is_hashed is order and symmetry invariant") {
  const CodeParams p{3, 3, 3};
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> tri;
    std::vector<std::vector<std::uint16_t>> raw(3, std::vector<std::uint16_t>(3));
    for (auto& w : raw)
      for (auto& s : w) s = static_cast<std::uint16_t>(rng() % 3);
    for (auto& w : raw) tri.emplace_back(p, w);
    const bool base = is_hashed(tri, p);

    std::shuffle(tri.begin(), tri.end(), rng);
    CHECK(is_hashed(tri, p) == base);

    // coordinate permutation + per-coordinate relabeling applied to all words
    std::vector<int> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<int>> relabel(3, std::vector<int>{0, 1, 2});
    for (auto& r : relabel) std::shuffle(r.begin(), r.end(), rng);
    std::vector<Word> mapped;
    for (const auto& w : tri) {
      std::vector<std::uint16_t> sym(3);
      for (int t = 0; t < 3; ++t)
        sym[t] = static_cast<std::uint16_t>(relabel[perm[t]][w.symbols()[perm[t]]]);
      mapped.emplace_back(p, sym);
    }
    CHECK(is_hashed(mapped, p) == base);
    CHECK(base == hashed_by_inspection(p, tri));
  }
}

TEST_CASE("first_violation") {
  const CodeParams one{3, 3, 1};
  CHECK_FALSE(first_violation(Code(one, words_of(one, {"0", "1", "2"}))).has_value());

  // fewer than k words: vacuous
  const CodeParams p2{3, 3, 2};
  CHECK_FALSE(first_violation(Code(p2, words_of(p2, {"00", "11"}))).has_value());

  // expected value computed by the inspection oracle over all triples
  const Code code(p2, words_of(p2, {"00", "01", "10", "22"}));
  std::optional<std::vector<int>> expected;
  for (int i = 0; i < 4 && !expected; ++i)
    for (int j = i + 1; j < 4 && !expected; ++j)
      for (int l = j + 1; l < 4 && !expected; ++l)
        if (!hashed_by_inspection(p2, {code.words()[i], code.words()[j], code.words()[l]}))
          expected = std::vector<int>{i, j, l};
  CHECK(first_violation(code) == expected);

  // a violating triple, if any, always matches the oracle on random codes
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::set<std::string> pool;
    while (pool.size() < 5) {
      std::string w;
      for (int c = 0; c < 2; ++c) w += static_cast<char>('0' + rng() % 3);
      pool.insert(w);
    }
    const Code c(p2, words_of(p2, std::vector<std::string>(pool.begin(), pool.end())));
    const auto got = first_violation(c);
    std::optional<std::vector<int>> want;
    const int m = c.size();
    for (int i = 0; i < m && !want; ++i)
      for (int j = i + 1; j < m && !want; ++j)
        for (int l = j + 1; l < m && !want; ++l)
          if (!hashed_by_inspection(p2, {c.words()[i], c.words()[j], c.words()[l]}))
            want = std::vector<int>{i, j, l};
    CHECK(got == want);
  }
}

TEST_CASE("code construction") {
  const CodeParams p{3, 3, 2};
  CHECK_THROWS_AS(Code(p, words_of(p, {"00", "00"})), std::invalid_argument);
  const Code c(p, words_of(p, {"10", "00"}));
  CHECK(c.words()[0].to_string() == "00");  // stored sorted
  CHECK(c.words()[1].to_string() == "10");
  CHECK_THROWS_AS(Word::parse(p, "03"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse(p, "0"), std::invalid_argument);
}

TEST_CASE("product word") {
  const CodeParams p{3, 3, 3};
  const auto [prod3, w3] = product_word(words_of(p, {"012", "120", "201"}), p);
  CHECK(prod3.b == 27);
  CHECK(w3.symbols() == std::vector<std::uint16_t>{0 * 9 + 1 * 3 + 2, 1 * 9 + 2 * 3 + 0,
                                                   2 * 9 + 0 * 3 + 1});
  const CodeParams one{3, 3, 1};
  const auto [prod1, w1] = product_word(words_of(one, {"0", "0", "0"}), one);
  CHECK(w1.symbols() == std::vector<std::uint16_t>{0});
  CHECK(prod1.n == 1);

  // hashed iff some product letter has pairwise-distinct components,
  // exhaustively over all 27 length-1 triples
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const std::vector<Word> tri = words_of(
            one, {std::string(1, static_cast<char>('0' + a)),
                  std::string(1, static_cast<char>('0' + b)),
                  std::string(1, static_cast<char>('0' + c))});
        const auto [pp, pw] = product_word(tri, one);
        const int letter = pw.symbols()[0];
        const int s0 = letter / 9, s1 = (letter / 3) % 3, s2 = letter % 3;
        const bool distinct = s0 != s1 && s0 != s2 && s1 != s2;
        CHECK(distinct == is_hashed(tri, one));
      }
}

TEST_CASE("code file round trip") {
  const CodeParams p{3, 3, 2};
  const Code c(p, words_of(p, {"00", "12", "21"}));
  const std::string text = render_code(c);
  CHECK(parse_code(text) == c);

  CHECK_THROWS_WITH_AS(parse_code("b=3 k=3\n00\n"), doctest::Contains("line 1"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_code("b=3 k=3 n=2\n0x\n"), doctest::Contains("line 2"),
                       std::runtime_error);
  const std::string commented = "# certificate\nb=3 k=3 n=2\n# words follow\n00\n12\n";
  CHECK(parse_code(commented).size() == 2);
}
