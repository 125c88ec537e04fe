#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "triff/code.hpp"
#include "triff/searcher.hpp"

using namespace triff;

namespace {

Code make_code(const CodeParams& p, const std::vector<std::string>& digits) {
  std::vector<Word> words;
  for (const auto& d : digits) words.push_back(Word::parse(p, d));
  return Code(p, std::move(words));
}

SearchConfig quiet_config(SymmetryLevel level = SymmetryLevel::full) {
  SearchConfig c;
  c.symmetry = level;
  c.deterministic = true;
  return c;
}

Code random_symmetry(const Code& code, std::mt19937& rng) {
  const auto& p = code.params();
  std::vector<int> perm(static_cast<size_t>(p.n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<int>> relabel(static_cast<size_t>(p.n));
  for (auto& r : relabel) {
    r.resize(static_cast<size_t>(p.b));
    std::iota(r.begin(), r.end(), 0);
    std::shuffle(r.begin(), r.end(), rng);
  }
  return transform_code(code, perm, relabel);
}

}  // namespace

TEST_CASE("brute force oracle") {
  const auto [t1, c1] = brute_force_max(CodeParams{3, 3, 1});
  CHECK(t1 == 3);
  CHECK(c1 == make_code(CodeParams{3, 3, 1}, {"0", "1", "2"}));

  const auto [t2, c2] = brute_force_max(CodeParams{2, 2, 1});
  CHECK(t2 == 2);
  CHECK(c2 == make_code(CodeParams{2, 2, 1}, {"0", "1"}));

  // any two distinct words differ somewhere: k=2 codes are unconstrained
  CHECK(brute_force_max(CodeParams{2, 2, 3}).first == 8);

  const auto [t3, c3] = brute_force_max(CodeParams{3, 3, 2});
  CHECK_FALSE(first_violation(c3).has_value());
  CHECK(c3.size() == t3);

  CHECK_THROWS_AS(brute_force_max(CodeParams{3, 3, 3}), std::invalid_argument);
}

TEST_CASE("search_exact basics") {
  const CodeParams one{3, 3, 1};
  const SearchVerdict found = search_exact(one, 3, quiet_config());
  REQUIRE(found.kind == SearchVerdict::Kind::found);
  CHECK_FALSE(first_violation(*found.certificate).has_value());
  CHECK(found.certificate->size() == 3);

  CHECK(search_exact(one, 4, quiet_config()).kind == SearchVerdict::Kind::exhausted);
  CHECK_THROWS_AS(search_exact(one, 0, quiet_config()), std::invalid_argument);

  // n=5: a 10-word certificate exists, none with 11 words
  const CodeParams n5{3, 3, 5};
  const SearchVerdict ten = search_exact(n5, 10, quiet_config());
  REQUIRE(ten.kind == SearchVerdict::Kind::found);
  CHECK_FALSE(first_violation(*ten.certificate).has_value());
  CHECK(search_exact(n5, 11, quiet_config()).kind == SearchVerdict::Kind::exhausted);
}

TEST_CASE("budget verdicts") {
  // n=5, m=11 needs millions of nodes to exhaust; a small budget must trip
  SearchConfig c = quiet_config();
  c.budget.max_nodes = 2000;
  const SearchVerdict v = search_exact(CodeParams{3, 3, 5}, 11, c);
  CHECK(v.kind == SearchVerdict::Kind::budget_exceeded);
  CHECK(v.stats.nodes >= 2000);

  // a search that finishes inside the first check interval stays exhaustive
  SearchConfig tiny = quiet_config();
  tiny.budget.max_nodes = 4;
  CHECK(search_exact(CodeParams{3, 3, 1}, 4, tiny).kind == SearchVerdict::Kind::exhausted);
}

TEST_CASE("max_size matches the oracle at every symmetry level") {
  for (const auto level : {SymmetryLevel::none, SymmetryLevel::fix_first_row,
                           SymmetryLevel::fix_first_row_lex, SymmetryLevel::full}) {
    for (int n = 1; n <= 2; ++n) {
      const CodeParams p{3, 3, n};
      const MaxSizeResult r = max_size(p, quiet_config(level));
      CHECK(r.status == MaxSizeResult::Status::exact);
      CHECK(r.lower == brute_force_max(p).first);
      CHECK(r.upper == r.lower);
      REQUIRE(r.certificate.has_value());
      CHECK_FALSE(first_violation(*r.certificate).has_value());
    }
    const CodeParams p2{2, 2, 2};
    CHECK(max_size(p2, quiet_config(level)).lower == brute_force_max(p2).first);
  }
}

TEST_CASE("max_size known values") {
  CHECK(max_size(CodeParams{3, 3, 1}, quiet_config()).lower == 3);
  CHECK(max_size(CodeParams{3, 3, 3}, quiet_config()).lower == 6);
  const MaxSizeResult n4 = max_size(CodeParams{3, 3, 4}, quiet_config());
  CHECK(n4.lower == 9);
  CHECK(n4.upper == 9);
  CHECK(n4.status == MaxSizeResult::Status::exact);
}

TEST_CASE("max_size is monotone in n and b") {
  int prev = 0;
  for (int n = 1; n <= 3; ++n) {
    const int t = max_size(CodeParams{3, 3, n}, quiet_config()).lower;
    CHECK(t >= prev);
    prev = t;
  }
  // larger alphabet at fixed arity can only help
  const int t22 = max_size(CodeParams{2, 2, 2}, quiet_config()).lower;
  const int t32 = max_size(CodeParams{3, 2, 2}, quiet_config()).lower;
  CHECK(t22 <= t32);
}

TEST_CASE("determinism across thread counts") {
  const CodeParams p{3, 3, 4};
  SearchConfig c = quiet_config();
  c.deterministic = true;
  c.threads = 1;
  const SearchVerdict first = search_exact(p, 9, c);
  for (int threads : {2, 8}) {
    c.threads = threads;
    const SearchVerdict again = search_exact(p, 9, c);
    CHECK(again.stats.nodes == first.stats.nodes);
    REQUIRE(again.certificate.has_value());
    CHECK(*again.certificate == *first.certificate);
  }

  // parallel mode must agree on the verdict even if certificates differ
  c.deterministic = false;
  c.threads = 4;
  CHECK(search_exact(p, 9, c).kind == SearchVerdict::Kind::found);
  CHECK(search_exact(p, 10, c).kind == SearchVerdict::Kind::exhausted);
}

TEST_CASE("generic engine handles other arities") {
  // k=2: every set of distinct words qualifies, so the maximum is b^n
  CHECK(max_size(CodeParams{2, 2, 2}, quiet_config()).lower == 4);
  // (4,3), n=1: any 3 of the 4 symbols are pairwise distinct
  CHECK(max_size(CodeParams{4, 3, 1}, quiet_config()).lower == 4);
  CHECK(brute_force_max(CodeParams{4, 3, 1}).first == 4);
  // k=4 needs a coordinate with four distinct symbols
  const SearchVerdict v = search_exact(CodeParams{4, 4, 1}, 4, quiet_config());
  REQUIRE(v.kind == SearchVerdict::Kind::found);
  CHECK_FALSE(first_violation(*v.certificate).has_value());
  CHECK(search_exact(CodeParams{4, 4, 1}, 5, quiet_config()).kind ==
        SearchVerdict::Kind::exhausted);
  // cross-check a k=4 instance against the subset oracle
  CHECK(max_size(CodeParams{4, 4, 1}, quiet_config()).lower ==
        brute_force_max(CodeParams{4, 4, 1}).first);
}

TEST_CASE("canonicalize") {
  const CodeParams p{3, 3, 2};

  // any singleton maps to the all-zeros word
  const Code single = make_code(p, {"21"});
  CHECK(canonicalize(single) == make_code(p, {"00"}));

  const Code code = make_code(p, {"00", "01", "12", "22"});
  const Code canon = canonicalize(code);
  CHECK(canonicalize(canon) == canon);  // idempotent

  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Code moved = random_symmetry(code, rng);
    CHECK(canonicalize(moved) == canon);
  }

  // guard on absurd group sizes
  const CodeParams big{3, 3, 12};
  std::vector<Word> words{Word::parse(big, "000000000000"), Word::parse(big, "111111111111")};
  CHECK_THROWS_AS(canonicalize(Code(big, std::move(words))), std::domain_error);
}

TEST_CASE("transform_code validates inputs") {
  const CodeParams p{3, 3, 2};
  const Code code = make_code(p, {"01", "12"});
  CHECK_THROWS_AS(transform_code(code, std::vector<int>{0, 0}, {}), std::invalid_argument);
  const std::vector<std::vector<int>> bad{{0, 1, 1}, {0, 1, 2}};
  CHECK_THROWS_AS(transform_code(code, {}, bad), std::invalid_argument);
  CHECK(transform_code(code, {}, {}) == code);
}
