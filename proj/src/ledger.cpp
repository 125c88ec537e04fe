#include "triff/ledger.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace triff {

namespace {

constexpr std::string_view kHeader = "triff-ledger v1";

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::string key_string(const CodeParams& p) {
  return std::to_string(p.b) + "," + std::to_string(p.k) + "," + std::to_string(p.n);
}

}  // namespace

void LedgerEntry::validate() const {
  key.validate();
  if (lower < 0 || upper < 0) throw std::invalid_argument("negative bound in entry " + key_string(key));
  if (lower > upper)
    throw std::invalid_argument("entry " + key_string(key) + ": lower exceeds upper");
  if (status == Status::exact && lower != upper)
    throw std::invalid_argument("entry " + key_string(key) + ": exact entry with lower != upper");
  if (lower > 0 && certificate_path.empty())
    throw std::invalid_argument("entry " + key_string(key) + ": positive lower bound without certificate");
}

std::string to_string(LedgerEntry::Status s) {
  return s == LedgerEntry::Status::exact ? "exact" : "bounded";
}

std::string to_string(LedgerEntry::Method m) {
  switch (m) {
    case LedgerEntry::Method::oracle: return "oracle";
    case LedgerEntry::Method::search: return "search";
    default: return "external-solver";
  }
}

std::vector<LedgerEntry> parse_ledger(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  std::vector<LedgerEntry> entries;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      if (line != kHeader) fail(lineno, "expected header '" + std::string(kHeader) + "'");
      have_header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string key_tok;
    if (!(ls >> key_tok)) fail(lineno, "empty entry");
    LedgerEntry e;
    if (std::sscanf(key_tok.c_str(), "%d,%d,%d", &e.key.b, &e.key.k, &e.key.n) != 3)
      fail(lineno, "bad key '" + key_tok + "' (expected b,k,n)");
    std::string field;
    bool saw_lower = false, saw_upper = false, saw_status = false, saw_method = false,
         saw_time = false;
    while (ls >> field) {
      const size_t eq = field.find('=');
      if (eq == std::string::npos) fail(lineno, "entry " + key_tok + ": bad field '" + field + "'");
      const std::string name = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      try {
        if (name == "lower") {
          e.lower = std::stoi(value);
          saw_lower = true;
        } else if (name == "upper") {
          e.upper = std::stoi(value);
          saw_upper = true;
        } else if (name == "status") {
          if (value == "exact") e.status = LedgerEntry::Status::exact;
          else if (value == "bounded") e.status = LedgerEntry::Status::bounded;
          else fail(lineno, "entry " + key_tok + ": unknown status '" + value + "'");
          saw_status = true;
        } else if (name == "cert") {
          e.certificate_path = value == "-" ? "" : value;
        } else if (name == "method") {
          if (value == "oracle") e.method = LedgerEntry::Method::oracle;
          else if (value == "search") e.method = LedgerEntry::Method::search;
          else if (value == "external-solver") e.method = LedgerEntry::Method::external_solver;
          else fail(lineno, "entry " + key_tok + ": unknown method '" + value + "'");
          saw_method = true;
        } else if (name == "time") {
          e.timestamp = value;
          saw_time = true;
        } else {
          fail(lineno, "entry " + key_tok + ": unknown field '" + name + "'");
        }
      } catch (const std::invalid_argument&) {
        fail(lineno, "entry " + key_tok + ": bad value for " + name);
      } catch (const std::out_of_range&) {
        fail(lineno, "entry " + key_tok + ": value out of range for " + name);
      }
    }
    if (!saw_lower || !saw_upper || !saw_status || !saw_method || !saw_time)
      fail(lineno, "entry " + key_tok + ": missing required fields");
    try {
      e.validate();
    } catch (const std::exception& ex) {
      fail(lineno, ex.what());
    }
    entries.push_back(std::move(e));
  }
  if (!have_header && lineno > 0) throw std::runtime_error("line 1: missing ledger header");
  return entries;
}

std::string render_ledger(const std::vector<LedgerEntry>& entries) {
  std::string out{kHeader};
  out += "\n";
  for (const auto& e : entries) {
    out += key_string(e.key);
    out += " lower=" + std::to_string(e.lower);
    out += " upper=" + std::to_string(e.upper);
    out += " status=" + to_string(e.status);
    out += " cert=" + (e.certificate_path.empty() ? std::string("-") : e.certificate_path);
    out += " method=" + to_string(e.method);
    out += " time=" + (e.timestamp.empty() ? std::string("-") : e.timestamp);
    out += "\n";
  }
  return out;
}

std::vector<LedgerEntry> ledger_load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    if (!std::filesystem::exists(path)) return {};
    throw std::runtime_error("cannot open ledger: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ledger(buf.str());
}

void ledger_save(const std::filesystem::path& path, std::vector<LedgerEntry> entries) {
  for (const auto& e : entries) e.validate();
  std::sort(entries.begin(), entries.end(), [](const LedgerEntry& a, const LedgerEntry& b) {
    return std::tie(a.key.b, a.key.k, a.key.n) < std::tie(b.key.b, b.key.k, b.key.n);
  });
  const int fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd < 0) throw std::runtime_error("cannot open ledger for writing: " + path.string());
  if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd);
    throw std::runtime_error("ledger is locked by another process: " + path.string());
  }
  const std::string text = render_ledger(entries);
  bool ok = ::ftruncate(fd, 0) == 0;
  size_t written = 0;
  while (ok && written < text.size()) {
    const ssize_t r = ::write(fd, text.data() + written, text.size() - written);
    if (r < 0) ok = false;
    else written += static_cast<size_t>(r);
  }
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (!ok) throw std::runtime_error("write failed: " + path.string());
}

std::string ledger_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace triff
