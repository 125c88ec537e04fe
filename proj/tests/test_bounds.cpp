#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "triff/bounds.hpp"
#include "triff/code_io.hpp"
#include "triff/searcher.hpp"

using namespace triff;

TEST_CASE("bound formulas") {
  CHECK(classic_upper(4, 2.0) == doctest::Approx(10.125));
  CHECK(classic_upper(1, 2.0) == doctest::Approx(3.0));
  CHECK(improved_upper(1, 1.0) == doctest::Approx(1.5));
  CHECK(km_lower(4, 1.0) == doctest::Approx(1.8));
  CHECK(km_lower(8, 1.0) == doctest::Approx(3.24));
  CHECK_THROWS_AS(classic_upper(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(km_lower(1, 0.0), std::invalid_argument);

  // monotone in the constant; the upper bounds grow with n
  for (int n = 1; n <= 10; ++n) {
    CHECK(classic_upper(n, 2.0) > classic_upper(n, 1.0));
    CHECK(improved_upper(n, 2.0) > improved_upper(n, 1.0));
    CHECK(km_lower(n, 2.0) > km_lower(n, 1.0));
    if (n >= 2) {
      CHECK(classic_upper(n, 1.0) > classic_upper(n - 1, 1.0));
      CHECK(improved_upper(n, 1.0) > improved_upper(n - 1, 1.0));
      // strictly below the classic bound at the same constant
      CHECK(improved_upper(n, 1.0) < classic_upper(n, 1.0));
    }
  }
  // the ratio is exactly n^(-2/5)
  for (int n = 1; n <= 6; ++n)
    CHECK(improved_upper(n, 1.0) / classic_upper(n, 1.0) ==
          doctest::Approx(std::pow(n, -0.4)));
}

TEST_CASE("computed exact values sit between the illustrative bounds") {
  SearchConfig cfg;
  cfg.deterministic = true;
  for (int n = 1; n <= 4; ++n) {
    const int exact = max_size(CodeParams{3, 3, n}, cfg).lower;
    CHECK(static_cast<double>(exact) <= classic_upper(n, 2.0));
    CHECK(km_lower(n, 1.0) <= static_cast<double>(exact));
  }
}

TEST_CASE("ledger_check") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "triff-ledger-check";
  fs::create_directories(dir);

  SUBCASE("empty ledger") { CHECK(ledger_check({}, {}).consistent()); }

  SUBCASE("verified entries pass, broken certificates are flagged") {
    SearchConfig cfg;
    cfg.deterministic = true;
    std::vector<LedgerEntry> entries;
    for (int n = 1; n <= 4; ++n) {
      const MaxSizeResult r = max_size(CodeParams{3, 3, n}, cfg);
      const std::string cert = "c33" + std::to_string(n) + ".code";
      write_code_file(dir / cert, *r.certificate);
      LedgerEntry e;
      e.key = CodeParams{3, 3, n};
      e.lower = e.upper = r.lower;
      e.status = LedgerEntry::Status::exact;
      e.certificate_path = cert;
      e.method = LedgerEntry::Method::search;
      e.timestamp = ledger_timestamp();
      entries.push_back(e);
    }
    LedgerCheckOptions opts;
    opts.base_dir = dir;
    CHECK(ledger_check(entries, opts).consistent());

    opts.recompute = true;
    CHECK(ledger_check(entries, opts).consistent());

    // a wrong exact value is caught by recomputation
    entries[0].lower = entries[0].upper = 2;
    const LedgerReport wrong = ledger_check(entries, opts);
    CHECK_FALSE(wrong.consistent());

    // a certificate that is not a hash code is caught without recomputation
    entries[0].lower = entries[0].upper = 3;
    const CodeParams p2{3, 3, 2};
    std::vector<Word> bad_words{Word::parse(p2, "00"), Word::parse(p2, "01"),
                                Word::parse(p2, "11")};
    write_code_file(dir / "bad.code", Code(p2, std::move(bad_words)));
    entries[1].certificate_path = "bad.code";
    opts.recompute = false;
    const LedgerReport broken = ledger_check(entries, opts);
    CHECK_FALSE(broken.consistent());
    bool mentions_verification = false;
    for (const auto& f : broken.findings)
      if (f.message.find("verification") != std::string::npos ||
          f.message.find("parameters") != std::string::npos)
        mentions_verification = true;
    CHECK(mentions_verification);
  }
}
