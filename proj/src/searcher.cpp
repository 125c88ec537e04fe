#include "triff/searcher.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace triff {

namespace {

constexpr long long kMaxTableWords = 1ll << 20;

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Coordinate mask fixed at two chunks; the table guard keeps n <= 20.
struct PairMask {
  std::uint64_t w0 = 0, w1 = 0;
  bool any() const { return (w0 | w1) != 0; }
  PairMask operator&(const PairMask& o) const { return {w0 & o.w0, w1 & o.w1}; }
};

// All b^n words in lexicographic order; pairwise masks cached for small
// tables.
struct Table {
  CodeParams params;
  int n_words = 0;
  std::vector<std::uint16_t> symbols;  // n_words * n
  bool pairs_cached = false;
  std::vector<PairMask> pair_cache;

  const std::uint16_t* row(int i) const {
    return &symbols[static_cast<size_t>(i) * params.n];
  }

  PairMask compute_mask(int i, int j) const {
    PairMask m;
    const std::uint16_t* a = row(i);
    const std::uint16_t* b = row(j);
    for (int t = 0; t < params.n; ++t)
      if (a[t] != b[t]) {
        if (t < 64)
          m.w0 |= std::uint64_t{1} << t;
        else
          m.w1 |= std::uint64_t{1} << (t - 64);
      }
    return m;
  }

  PairMask mask(int i, int j) const {
    if (pairs_cached) return pair_cache[static_cast<size_t>(i) * n_words + j];
    return compute_mask(i, j);
  }

  Word word(int i) const {
    return Word(params, std::vector<std::uint16_t>(row(i), row(i) + params.n));
  }
};

Table build_table(const CodeParams& params) {
  const long long total = params.total_words();
  if (total > kMaxTableWords)
    throw std::invalid_argument("search requires b^n <= 2^20 candidate words");
  Table t;
  t.params = params;
  t.n_words = static_cast<int>(total);
  t.symbols.assign(static_cast<size_t>(total) * params.n, 0);
  for (int i = 1; i < t.n_words; ++i) {
    // increment previous word as a base-b odometer (last coordinate fastest)
    const std::uint16_t* prev = t.row(i - 1);
    std::uint16_t* cur = &t.symbols[static_cast<size_t>(i) * params.n];
    std::copy(prev, prev + params.n, cur);
    for (int j = params.n - 1; j >= 0; --j) {
      if (++cur[j] < params.b) break;
      cur[j] = 0;
    }
  }
  if (t.n_words <= 1024) {
    t.pairs_cached = true;
    t.pair_cache.assign(static_cast<size_t>(t.n_words) * t.n_words, PairMask{});
    for (int i = 0; i < t.n_words; ++i)
      for (int j = i + 1; j < t.n_words; ++j) {
        PairMask m = t.compute_mask(i, j);
        t.pair_cache[static_cast<size_t>(i) * t.n_words + j] = m;
        t.pair_cache[static_cast<size_t>(j) * t.n_words + i] = m;
      }
  }
  return t;
}

bool sorted_rows(SymmetryLevel level) {
  return level == SymmetryLevel::fix_first_row_lex || level == SymmetryLevel::full;
}

// Words over {0,1} only, as candidate indices.
std::vector<int> two_free_candidates(const Table& t) {
  std::vector<int> out;
  for (int i = 0; i < t.n_words; ++i) {
    const std::uint16_t* r = t.row(i);
    if (std::all_of(r, r + t.params.n, [](std::uint16_t s) { return s <= 1; }))
      out.push_back(i);
  }
  return out;
}

struct Shared {
  const SearchBudget* budget = nullptr;
  Clock::time_point start;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::atomic<int> peak_depth{0};
  std::mutex result_mu;
  std::optional<Code> certificate;

  void note_depth(int d) {
    int cur = peak_depth.load(std::memory_order_relaxed);
    while (d > cur && !peak_depth.compare_exchange_weak(cur, d)) {
    }
  }

  // Returns false once the search should unwind.
  bool tick(std::uint64_t& local) {
    if (++local >= 1024) {
      nodes.fetch_add(local, std::memory_order_relaxed);
      local = 0;
      if (nodes.load(std::memory_order_relaxed) >= budget->max_nodes ||
          elapsed_seconds(start) >= budget->max_seconds) {
        budget_hit.store(true);
        stop.store(true);
      }
    }
    return !stop.load(std::memory_order_relaxed);
  }

  void flush(std::uint64_t& local) {
    nodes.fetch_add(local, std::memory_order_relaxed);
    local = 0;
  }

  // between-prefix budget check, so short subtrees still observe the limit
  void check_budget() {
    if (nodes.load(std::memory_order_relaxed) >= budget->max_nodes ||
        elapsed_seconds(start) >= budget->max_seconds) {
      budget_hit.store(true);
      stop.store(true);
    }
  }

  void offer(Code cert) {
    std::lock_guard lock(result_mu);
    if (!certificate) certificate = std::move(cert);
    stop.store(true);
  }
};

// Candidate bitset over table indices.
struct CandSet {
  std::vector<std::uint64_t> bits;

  explicit CandSet(int n_words = 0) : bits((n_words + 63) / 64, 0) {}
  void set(int i) { bits[i >> 6] |= std::uint64_t{1} << (i & 63); }
  int count() const {
    int c = 0;
    for (auto w : bits) c += std::popcount(w);
    return c;
  }
};

// k = 3 engine over strictly increasing rows. feas_[d] holds the candidates
// above the last chosen row that keep every triple through the first d rows
// hashed, so a push only has to screen the new pairs.
class TripleDfs {
 public:
  TripleDfs(const Table& t, int m, Shared& sh)
      : t_(t), m_(m), sh_(sh), chosen_(static_cast<size_t>(m)) {
    feas_.assign(static_cast<size_t>(m) + 1, CandSet(t.n_words));
  }

  ~TripleDfs() { sh_.flush(local_); }

  // Runs the subtree rooted at the two-row prefix (r0, r1).
  void run_pair(int r0, int r1) {
    chosen_[0] = r0;
    sh_.note_depth(1);
    if (m_ == 1) {
      found({r0});
      return;
    }
    chosen_[1] = r1;
    sh_.note_depth(2);
    if (m_ == 2) {
      found({r0, r1});
      return;
    }
    CandSet& f = feas_[2];
    std::fill(f.bits.begin(), f.bits.end(), 0);
    const PairMask base = t_.mask(r0, r1);
    for (int c = r1 + 1; c < t_.n_words; ++c)
      if ((base & t_.mask(r0, c) & t_.mask(r1, c)).any()) f.set(c);
    dfs(2);
  }

 private:
  void found(std::vector<int> rows) {
    std::vector<Word> words;
    words.reserve(rows.size());
    for (int r : rows) words.push_back(t_.word(r));
    Code cert(t_.params, std::move(words));
    if (first_violation(cert)) throw std::logic_error("search produced an invalid certificate");
    sh_.offer(std::move(cert));
  }

  bool dfs(int d) {
    const int need = m_ - d;
    const CandSet& f = feas_[d];
    int remaining = f.count();
    if (remaining < need) return false;
    for (size_t chunk = 0; chunk < f.bits.size(); ++chunk) {
      std::uint64_t w = f.bits[chunk];
      while (w) {
        const int c = static_cast<int>(chunk * 64) + std::countr_zero(w);
        w &= w - 1;
        if (remaining < need) return false;  // later candidates only dwindle
        --remaining;
        if (!sh_.tick(local_)) return true;
        chosen_[d] = c;
        sh_.note_depth(d + 1);
        if (need == 1) {
          found(std::vector<int>(chosen_.begin(), chosen_.begin() + m_));
          return true;
        }
        CandSet& g = feas_[d + 1];
        std::fill(g.bits.begin(), g.bits.end(), 0);
        int surviving = 0;
        for (size_t ch2 = chunk; ch2 < f.bits.size(); ++ch2) {
          std::uint64_t w2 = f.bits[ch2];
          if (ch2 == chunk) w2 &= ~((std::uint64_t{2} << (c & 63)) - 1);  // keep > c
          while (w2) {
            const int c2 = static_cast<int>(ch2 * 64) + std::countr_zero(w2);
            w2 &= w2 - 1;
            bool ok = true;
            const PairMask mc2 = t_.mask(c, c2);
            for (int i = 0; i < d; ++i)
              if (!(t_.mask(chosen_[i], c) & t_.mask(chosen_[i], c2) & mc2).any()) {
                ok = false;
                break;
              }
            if (ok) {
              g.set(c2);
              ++surviving;
            }
          }
        }
        if (surviving >= need - 1 && dfs(d + 1)) return true;
      }
    }
    return false;
  }

  const Table& t_;
  const int m_;
  Shared& sh_;
  std::vector<int> chosen_;
  std::vector<CandSet> feas_;
  std::uint64_t local_ = 0;
};

// General engine: any k, ordered or unordered extension. Compatibility of a
// new row checks every (k-1)-subset of the current rows by intersecting the
// stored pairwise masks with the masks against the new row.
class GenericDfs {
 public:
  GenericDfs(const Table& t, int m, SymmetryLevel level, Shared& sh)
      : t_(t), m_(m), level_(level), sh_(sh), chosen_(static_cast<size_t>(m)),
        in_use_(static_cast<size_t>(t.n_words), 0),
        pm_(static_cast<size_t>(m) * m) {}

  ~GenericDfs() { sh_.flush(local_); }

  void run_pair(int r0, int r1) {
    push(0, r0);
    if (m_ == 1) {
      found();
      return;
    }
    if (!compatible(r1, 1)) {
      pop(0, r0);
      return;
    }
    push(1, r1);
    if (m_ == 2)
      found();
    else
      dfs(2);
    pop(1, r1);
    pop(0, r0);
  }

 private:
  PairMask& pm(int i, int j) { return pm_[static_cast<size_t>(i) * m_ + j]; }

  void push(int d, int c) {
    for (int i = 0; i < d; ++i) {
      PairMask m = t_.mask(chosen_[i], c);
      pm(i, d) = m;
      pm(d, i) = m;
    }
    chosen_[d] = c;
    in_use_[c] = 1;
    sh_.note_depth(d + 1);
  }

  void pop(int d, int c) { (void)d; in_use_[c] = 0; }

  // Every (k-1)-subset of the first d rows must keep a nonzero intersection
  // together with candidate c.
  bool compatible(int c, int d) {
    if (d < t_.params.k - 1) return true;
    return subsets_ok(c, d, 0, 0, PairMask{~0ull, ~0ull});
  }

  bool subsets_ok(int c, int d, int start, int picked, PairMask acc) {
    if (picked == t_.params.k - 1) return acc.any();
    // loop bound leaves enough indices to finish the subset, so an empty
    // partial intersection already dooms some completion
    for (int i = start; i <= d - (t_.params.k - 1 - picked); ++i) {
      PairMask next = acc & t_.mask(chosen_[i], c);
      for (int j = 0; j < picked; ++j) next = next & pm(sel_[j], i);
      if (!next.any()) return false;
      sel_[picked] = i;
      if (!subsets_ok(c, d, i + 1, picked + 1, next)) return false;
    }
    return true;
  }

  void found() {
    std::vector<Word> words;
    for (int i = 0; i < m_; ++i) words.push_back(t_.word(chosen_[i]));
    Code cert(t_.params, std::move(words));
    if (first_violation(cert)) throw std::logic_error("search produced an invalid certificate");
    sh_.offer(std::move(cert));
  }

  bool dfs(int d) {
    const int need = m_ - d;
    const bool ordered = sorted_rows(level_);
    const int lo = ordered ? chosen_[d - 1] + 1 : 0;
    for (int c = lo; c < t_.n_words; ++c) {
      if (ordered && t_.n_words - c < need) break;
      if (in_use_[c]) continue;
      if (!sh_.tick(local_)) return true;
      if (!compatible(c, d)) continue;
      push(d, c);
      bool done;
      if (d + 1 == m_) {
        found();
        done = true;
      } else {
        done = dfs(d + 1);
      }
      pop(d, c);
      if (done) return true;
    }
    return false;
  }

  const Table& t_;
  const int m_;
  const SymmetryLevel level_;
  Shared& sh_;
  std::vector<int> chosen_;
  std::vector<char> in_use_;
  std::vector<PairMask> pm_;
  int sel_[64] = {};
  std::uint64_t local_ = 0;
};

struct Prefix {
  int r0;
  int r1;  // -1 when m == 1
};

std::vector<Prefix> build_prefixes(const Table& t, int m, SymmetryLevel level) {
  std::vector<int> firsts;
  if (level == SymmetryLevel::none)
    for (int i = 0; i < t.n_words; ++i) firsts.push_back(i);
  else
    firsts.push_back(0);

  std::vector<Prefix> out;
  if (m == 1) {
    for (int r0 : firsts) out.push_back({r0, -1});
    return out;
  }
  std::vector<int> two_free;
  if (level == SymmetryLevel::full && t.params.b == 3) two_free = two_free_candidates(t);
  for (int r0 : firsts) {
    if (level == SymmetryLevel::full && t.params.b == 3) {
      for (int r1 : two_free)
        if (r1 > r0) out.push_back({r0, r1});
    } else if (sorted_rows(level)) {
      for (int r1 = r0 + 1; r1 < t.n_words; ++r1) out.push_back({r0, r1});
    } else {
      for (int r1 = 0; r1 < t.n_words; ++r1)
        if (r1 != r0) out.push_back({r0, r1});
    }
  }
  return out;
}

void run_prefix(const Table& t, int m, SymmetryLevel level, Shared& sh, const Prefix& p) {
  if (t.params.k == 3 && sorted_rows(level)) {
    TripleDfs engine(t, m, sh);
    engine.run_pair(p.r0, p.r1);
  } else {
    GenericDfs engine(t, m, level, sh);
    engine.run_pair(p.r0, p.r1);
  }
}

}  // namespace

SearchVerdict search_exact(const CodeParams& params, int m, const SearchConfig& config) {
  params.validate();
  if (m < 1) throw std::invalid_argument("target size m must be at least 1");
  const Table table = build_table(params);

  Shared sh;
  sh.budget = &config.budget;
  sh.start = Clock::now();

  SearchVerdict verdict;
  if (m > table.n_words) {
    verdict.kind = SearchVerdict::Kind::exhausted;
    verdict.stats.seconds = elapsed_seconds(sh.start);
    return verdict;
  }

  const auto prefixes = build_prefixes(table, m, config.symmetry);
  if (config.deterministic) {
    for (size_t i = 0; i < prefixes.size(); ++i) {
      run_prefix(table, m, config.symmetry, sh, prefixes[i]);
      if (i + 1 < prefixes.size()) sh.check_budget();  // a finished run stays exhausted
      if (sh.stop.load()) break;
    }
  } else {
    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp<int>(threads, 1, static_cast<int>(prefixes.size()));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        while (!sh.stop.load(std::memory_order_relaxed)) {
          const size_t idx = next.fetch_add(1);
          if (idx >= prefixes.size()) return;
          run_prefix(table, m, config.symmetry, sh, prefixes[idx]);
          if (next.load(std::memory_order_relaxed) < prefixes.size()) sh.check_budget();
        }
      });
    for (auto& th : pool) th.join();
  }

  verdict.stats.nodes = sh.nodes.load();
  verdict.stats.seconds = elapsed_seconds(sh.start);
  verdict.stats.peak_depth = sh.peak_depth.load();
  if (sh.certificate) {
    verdict.kind = SearchVerdict::Kind::found;
    verdict.certificate = std::move(sh.certificate);
  } else if (sh.budget_hit.load()) {
    verdict.kind = SearchVerdict::Kind::budget_exceeded;
  } else {
    verdict.kind = SearchVerdict::Kind::exhausted;
  }
  return verdict;
}

MaxSizeResult max_size(const CodeParams& params, const SearchConfig& config) {
  params.validate();
  MaxSizeResult result;
  const long long total = params.total_words();
  for (int m = 1; m <= total; ++m) {
    SearchVerdict v = search_exact(params, m, config);
    result.stats.nodes += v.stats.nodes;
    result.stats.seconds += v.stats.seconds;
    result.stats.peak_depth = std::max(result.stats.peak_depth, v.stats.peak_depth);
    if (v.kind == SearchVerdict::Kind::found) {
      result.lower = m;
      result.certificate = std::move(v.certificate);
      continue;
    }
    if (v.kind == SearchVerdict::Kind::exhausted) {
      result.upper = m - 1;
      result.status = MaxSizeResult::Status::exact;
      return result;
    }
    result.upper = static_cast<int>(total);
    result.status = MaxSizeResult::Status::bounded;
    return result;
  }
  // every size up to b^n is achievable
  result.upper = static_cast<int>(total);
  result.status = MaxSizeResult::Status::exact;
  return result;
}

std::pair<int, Code> brute_force_max(const CodeParams& params) {
  params.validate();
  const long long total = params.total_words();
  if (total > 12) throw std::invalid_argument("brute_force_max requires b^n <= 12");
  const Table table = build_table(params);
  const int n_words = table.n_words;
  const int k = params.k;

  // Direct per-coordinate inspection, independent of the mask machinery.
  auto subset_hashed = [&](const std::vector<int>& idx) {
    for (int c = 0; c < params.n; ++c) {
      bool seen[16] = {};  // b <= 12 under the oracle guard
      bool distinct = true;
      for (int i : idx) {
        const int s = table.row(i)[c];
        if (seen[s]) {
          distinct = false;
          break;
        }
        seen[s] = true;
      }
      if (distinct) return true;
    }
    return false;
  };

  auto valid = [&](unsigned mask) {
    std::vector<int> members;
    for (int i = 0; i < n_words; ++i)
      if (mask & (1u << i)) members.push_back(i);
    if (static_cast<int>(members.size()) < k) return true;
    std::vector<int> idx(static_cast<size_t>(k));
    std::vector<int> pick(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      for (int i = 0; i < k; ++i) pick[i] = members[idx[i]];
      if (!subset_hashed(pick)) return false;
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == static_cast<int>(members.size()) - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return true;
  };

  int best = 0;
  unsigned best_mask = 0;
  for (unsigned mask = 1; mask < (1u << n_words); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    if (valid(mask)) {
      best = size;
      best_mask = mask;
    }
  }
  std::vector<Word> words;
  for (int i = 0; i < n_words; ++i)
    if (best_mask & (1u << i)) words.push_back(table.word(i));
  return {best, Code(params, std::move(words))};
}

Code transform_code(const Code& code, std::span<const int> coord_perm,
                    std::span<const std::vector<int>> relabel) {
  const auto& p = code.params();
  if (!coord_perm.empty()) {
    if (static_cast<int>(coord_perm.size()) != p.n)
      throw std::invalid_argument("coordinate permutation must have length n");
    std::vector<char> seen(static_cast<size_t>(p.n), 0);
    for (int j : coord_perm) {
      if (j < 0 || j >= p.n || seen[j]) throw std::invalid_argument("not a coordinate permutation");
      seen[j] = 1;
    }
  }
  if (!relabel.empty()) {
    if (static_cast<int>(relabel.size()) != p.n)
      throw std::invalid_argument("need one alphabet bijection per coordinate");
    for (const auto& r : relabel) {
      if (static_cast<int>(r.size()) != p.b) throw std::invalid_argument("bijection arity mismatch");
      std::vector<char> seen(static_cast<size_t>(p.b), 0);
      for (int v : r) {
        if (v < 0 || v >= p.b || seen[v]) throw std::invalid_argument("not an alphabet bijection");
        seen[v] = 1;
      }
    }
  }
  std::vector<Word> out;
  out.reserve(code.words().size());
  for (const auto& w : code.words()) {
    std::vector<std::uint16_t> sym(static_cast<size_t>(p.n));
    for (int t = 0; t < p.n; ++t) {
      const int j = coord_perm.empty() ? t : coord_perm[t];
      const int s = w.symbols()[j];
      sym[t] = static_cast<std::uint16_t>(relabel.empty() ? s : relabel[j][s]);
    }
    out.emplace_back(p, std::move(sym));
  }
  return Code(p, std::move(out));
}

Code canonicalize(const Code& code) {
  const auto& p = code.params();
  const int m = code.size();
  const int n = p.n;
  if (m == 0) return code;

  // group size guard: m * n! * (b-1)!^n
  double group = m;
  for (int i = 2; i <= n; ++i) group *= i;
  double fact = 1;
  for (int i = 2; i <= p.b - 1; ++i) fact *= i;
  for (int i = 0; i < n; ++i) group *= fact;
  if (group > static_cast<double>(1 << 24))
    throw std::domain_error("canonicalize group guard exceeded (m * n! * (b-1)!^n too large)");

  // permutations of {1..b-1} used as images of the non-base symbols
  std::vector<std::vector<int>> perms;
  {
    std::vector<int> ids(static_cast<size_t>(p.b - 1));
    std::iota(ids.begin(), ids.end(), 1);
    do {
      perms.push_back(ids);
    } while (std::next_permutation(ids.begin(), ids.end()));
  }

  std::vector<std::uint16_t> best;
  std::vector<std::uint16_t> flat(static_cast<size_t>(m) * n);
  std::vector<std::vector<std::uint16_t>> rows(static_cast<size_t>(m),
                                               std::vector<std::uint16_t>(static_cast<size_t>(n)));
  // rank of each symbol among the non-base symbols of a column
  std::vector<std::vector<int>> rank(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(p.b)));

  for (int base = 0; base < m; ++base) {
    const auto& base_row = code.words()[base].symbols();
    for (int j = 0; j < n; ++j) {
      int r = 0;
      for (int s = 0; s < p.b; ++s) rank[j][s] = (s == base_row[j]) ? -1 : r++;
    }
    std::vector<int> cols(static_cast<size_t>(n));
    std::iota(cols.begin(), cols.end(), 0);
    do {
      std::vector<size_t> combo(static_cast<size_t>(n), 0);
      while (true) {
        for (int i = 0; i < m; ++i) {
          const auto& src = code.words()[i].symbols();
          for (int t = 0; t < n; ++t) {
            const int j = cols[t];
            const int s = src[j];
            rows[i][t] = (s == base_row[j])
                             ? 0
                             : static_cast<std::uint16_t>(perms[combo[j]][rank[j][s]]);
          }
        }
        std::sort(rows.begin(), rows.end());
        for (int i = 0; i < m; ++i)
          std::copy(rows[i].begin(), rows[i].end(), flat.begin() + static_cast<size_t>(i) * n);
        if (best.empty() || flat < best) best = flat;
        // odometer over per-column relabelings
        int j = 0;
        for (; j < n; ++j) {
          if (++combo[j] < perms.size()) break;
          combo[j] = 0;
        }
        if (j == n) break;
      }
    } while (std::next_permutation(cols.begin(), cols.end()));
  }

  std::vector<Word> out;
  out.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    out.emplace_back(p, std::vector<std::uint16_t>(best.begin() + static_cast<size_t>(i) * n,
                                                   best.begin() + static_cast<size_t>(i + 1) * n));
  return Code(p, std::move(out));
}

}  // namespace triff
