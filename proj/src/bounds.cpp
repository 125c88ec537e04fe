#include "triff/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "triff/code_io.hpp"

namespace triff {

namespace {

void check_args(int n, double c) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(c > 0)) throw std::invalid_argument("constant must be positive");
}

std::string key_string(const CodeParams& p) {
  return std::to_string(p.b) + "," + std::to_string(p.k) + "," + std::to_string(p.n);
}

}  // namespace

double classic_upper(int n, double c) {
  check_args(n, c);
  return c * std::pow(1.5, n);
}

double improved_upper(int n, double c) {
  check_args(n, c);
  return c * std::pow(n, -0.4) * std::pow(1.5, n);
}

double km_lower(int n, double c) {
  check_args(n, c);
  return c * std::pow(1.8, n / 4.0);
}

LedgerReport ledger_check(const std::vector<LedgerEntry>& entries,
                          const LedgerCheckOptions& options) {
  LedgerReport report;
  auto flag = [&](const LedgerEntry& e, std::string msg) {
    report.findings.push_back({key_string(e.key), std::move(msg)});
  };

  for (const auto& e : entries) {
    try {
      e.validate();
    } catch (const std::exception& ex) {
      flag(e, ex.what());
      continue;
    }
    if (!e.certificate_path.empty()) {
      const auto path = options.base_dir / e.certificate_path;
      try {
        const Code cert = read_code_file(path);
        if (!(cert.params() == e.key)) {
          flag(e, "certificate parameters do not match the entry key");
        } else if (auto bad = first_violation(cert)) {
          std::string rows;
          for (int r : *bad) rows += " " + std::to_string(r + 1);
          flag(e, "certificate fails verification at rows" + rows);
        } else if (cert.size() < e.lower) {
          flag(e, "certificate has " + std::to_string(cert.size()) +
                      " words, fewer than lower=" + std::to_string(e.lower));
        }
      } catch (const std::exception& ex) {
        flag(e, std::string("certificate unreadable: ") + ex.what());
      }
    }
    if (options.recompute) {
      try {
        int exact = -1;
        if (e.key.total_words() <= 12) {
          exact = brute_force_max(e.key).first;
        } else {
          const MaxSizeResult r = max_size(e.key, options.search);
          if (r.status == MaxSizeResult::Status::exact) exact = r.lower;
        }
        if (exact >= 0) {
          if (e.status == LedgerEntry::Status::exact && e.lower != exact)
            flag(e, "exact entry " + std::to_string(e.lower) + " disagrees with recomputed " +
                        std::to_string(exact));
          if (e.status == LedgerEntry::Status::bounded &&
              (e.lower > exact || e.upper < exact))
            flag(e, "recomputed value " + std::to_string(exact) + " falls outside [" +
                        std::to_string(e.lower) + ", " + std::to_string(e.upper) + "]");
        }
      } catch (const std::exception& ex) {
        flag(e, std::string("recomputation failed: ") + ex.what());
      }
    }
  }
  return report;
}

}  // namespace triff
