#pragma once

// Results ledger: one structured text file, versioned header "triff-ledger
// v1", one entry per line keyed by "b,k,n". Saving takes an advisory
// exclusive lock and fails fast on contention.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "triff/code.hpp"

namespace triff {

struct LedgerEntry {
  CodeParams key;
  int lower = 0;
  int upper = 0;
  enum class Status { exact, bounded } status = Status::exact;
  std::string certificate_path;  // may be empty only when lower == 0
  enum class Method { oracle, search, external_solver } method = Method::search;
  std::string timestamp;  // ISO-8601 UTC

  // Throws std::invalid_argument when the per-entry invariants fail
  // (lower <= upper, exact => lower == upper, certificate when lower > 0).
  void validate() const;
};

std::string to_string(LedgerEntry::Status s);
std::string to_string(LedgerEntry::Method m);

// Parse errors carry the line number and, where known, the entry key.
std::vector<LedgerEntry> parse_ledger(std::string_view text);
std::string render_ledger(const std::vector<LedgerEntry>& entries);

std::vector<LedgerEntry> ledger_load(const std::filesystem::path& path);

// Sorts by key and writes atomically under an advisory lock.
void ledger_save(const std::filesystem::path& path, std::vector<LedgerEntry> entries);

// Current UTC time in the ledger's timestamp format.
std::string ledger_timestamp();

}  // namespace triff
