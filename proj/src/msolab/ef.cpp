#include "triff/msolab/ef.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace triff::msolab {

namespace {

void check_guard(const LabStructure& s, int rho, const EfLimits& limits) {
  if (rho < 0) throw std::invalid_argument("rank must be nonnegative");
  if (s.size() > limits.max_domain)
    throw std::domain_error("domain size " + std::to_string(s.size()) +
                            " exceeds the type-computation guard");
  const double base = static_cast<double>(s.size()) + std::ldexp(1.0, s.size());
  if (std::pow(base, rho) > limits.budget)
    throw std::domain_error("rank " + std::to_string(rho) + " on " + std::to_string(s.size()) +
                            " elements exceeds the work guard");
}

std::string move_constant_name(const LabStructure& s) {
  return "@c" + std::to_string(s.constants().size());
}

std::string move_set_name(const LabStructure& s) {
  return "@s" + std::to_string(s.sets().size());
}

struct TypeCtx {
  std::unordered_map<std::string, std::string> memo;
};

std::string type_digest(const LabStructure& s, int rho, TypeCtx& ctx) {
  if (rho == 0) return "[" + atomic_diagram(s) + "]";
  const std::string key = std::to_string(rho) + "#" + s.canonical_form();
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
  std::set<std::string> point_types, set_types;
  const std::string cname = move_constant_name(s);
  for (int v = 0; v < s.size(); ++v)
    point_types.insert(type_digest(s.with_constant(cname, v), rho - 1, ctx));
  const std::string sname = move_set_name(s);
  const std::uint64_t limit = s.domain_mask();
  std::uint64_t mask = 0;
  while (true) {
    set_types.insert(type_digest(s.with_set(sname, mask), rho - 1, ctx));
    if (mask == limit) break;
    ++mask;
  }
  std::string digest = "P{";
  for (const auto& t : point_types) digest += t + ",";
  digest += "}S{";
  for (const auto& t : set_types) digest += t + ",";
  digest += "}";
  ctx.memo.emplace(key, digest);
  return digest;
}

}  // namespace

std::string atomic_diagram(const LabStructure& s) {
  std::string out;
  const auto& cs = s.constants();
  for (size_t i = 0; i < cs.size(); ++i) {
    out += cs[i].first;
    if (s.has_letters()) out += ":l" + std::to_string(s.letter(cs[i].second));
    for (size_t j = 0; j < cs.size(); ++j) {
      if (i != j) out += cs[i].second == cs[j].second ? "=1" : "=0";
      for (int a = 0; a < s.branching(); ++a)
        out += s.succ(a, cs[i].second, cs[j].second) ? '1' : '0';
    }
    for (const auto& [name, members] : s.sets())
      out += (members >> cs[i].second) & 1 ? '1' : '0';
    out += ';';
  }
  return out;
}

RankType rank_type(const LabStructure& s, int rho, const EfLimits& limits) {
  check_guard(s, rho, limits);
  TypeCtx ctx;
  return RankType{rho, type_digest(s, rho, ctx)};
}

bool ef_equivalent(const LabStructure& a, const LabStructure& b, int rho,
                   const EfLimits& limits) {
  if (!LabStructure::same_vocabulary(a, b))
    throw std::invalid_argument("structures have different vocabularies");
  check_guard(a, rho, limits);
  check_guard(b, rho, limits);
  TypeCtx ctx;  // shared: canonical keys make it safe across both sides
  return type_digest(a, rho, ctx) == type_digest(b, rho, ctx);
}

namespace {

struct GameCtx {
  std::unordered_map<std::string, bool> memo;
};

bool bob_wins(const LabStructure& a, const LabStructure& b, int r, GameCtx& ctx);

// Whether Bob has a reply to Alice's move; `side` is the structure Alice
// chose from (0 = a, 1 = b).
bool bob_can_reply_point(const LabStructure& a, const LabStructure& b, int side, int choice,
                         int r, GameCtx& ctx) {
  const std::string name = move_constant_name(a);
  const LabStructure& resp = side == 0 ? b : a;
  for (int w = 0; w < resp.size(); ++w) {
    const LabStructure& na = side == 0 ? a.with_constant(name, choice) : a.with_constant(name, w);
    const LabStructure& nb = side == 0 ? b.with_constant(name, w) : b.with_constant(name, choice);
    if (bob_wins(na, nb, r, ctx)) return true;
  }
  return false;
}

bool bob_can_reply_set(const LabStructure& a, const LabStructure& b, int side,
                       std::uint64_t choice, int r, GameCtx& ctx) {
  const std::string name = move_set_name(a);
  const LabStructure& resp = side == 0 ? b : a;
  const std::uint64_t limit = resp.domain_mask();
  std::uint64_t w = 0;
  while (true) {
    const LabStructure na = side == 0 ? a.with_set(name, choice) : a.with_set(name, w);
    const LabStructure nb = side == 0 ? b.with_set(name, w) : b.with_set(name, choice);
    if (bob_wins(na, nb, r, ctx)) return true;
    if (w == limit) break;
    ++w;
  }
  return false;
}

bool bob_wins(const LabStructure& a, const LabStructure& b, int r, GameCtx& ctx) {
  // a violated correspondence can never recover: moves only add facts
  if (atomic_diagram(a) != atomic_diagram(b)) return false;
  if (r == 0) return true;
  const std::string key = std::to_string(r) + "#" + a.canonical_form() + "|" + b.canonical_form();
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
  bool result = true;
  for (int side = 0; side < 2 && result; ++side) {
    const LabStructure& src = side == 0 ? a : b;
    for (int v = 0; v < src.size() && result; ++v)
      if (!bob_can_reply_point(a, b, side, v, r - 1, ctx)) result = false;
  }
  for (int side = 0; side < 2 && result; ++side) {
    const LabStructure& src = side == 0 ? a : b;
    const std::uint64_t limit = src.domain_mask();
    std::uint64_t mask = 0;
    while (result) {
      if (!bob_can_reply_set(a, b, side, mask, r - 1, ctx)) result = false;
      if (mask == limit) break;
      ++mask;
    }
  }
  ctx.memo.emplace(key, result);
  return result;
}

// Extends the losing line: Alice's first winning move, Bob's first reply.
void alice_line(const LabStructure& a, const LabStructure& b, int r, GameCtx& ctx,
                std::vector<GameRound>& rounds) {
  if (r == 0 || atomic_diagram(a) != atomic_diagram(b)) return;
  // point moves
  for (int side = 0; side < 2; ++side) {
    const LabStructure& src = side == 0 ? a : b;
    for (int v = 0; v < src.size(); ++v)
      if (!bob_can_reply_point(a, b, side, v, r - 1, ctx)) {
        GameRound round{false, side, static_cast<std::uint64_t>(v), false, 0};
        const std::string name = move_constant_name(a);
        const LabStructure& resp = side == 0 ? b : a;
        if (resp.size() > 0) {
          round.bob_responded = true;
          round.bob_response = 0;  // all replies lose; show the first
          rounds.push_back(round);
          const LabStructure na = side == 0 ? a.with_constant(name, v) : a.with_constant(name, 0);
          const LabStructure nb = side == 0 ? b.with_constant(name, 0) : b.with_constant(name, v);
          alice_line(na, nb, r - 1, ctx, rounds);
        } else {
          rounds.push_back(round);
        }
        return;
      }
  }
  // set moves
  for (int side = 0; side < 2; ++side) {
    const LabStructure& src = side == 0 ? a : b;
    const std::uint64_t limit = src.domain_mask();
    std::uint64_t mask = 0;
    while (true) {
      if (!bob_can_reply_set(a, b, side, mask, r - 1, ctx)) {
        GameRound round{true, side, mask, true, 0};
        rounds.push_back(round);
        const std::string name = move_set_name(a);
        const LabStructure na = side == 0 ? a.with_set(name, mask) : a.with_set(name, 0);
        const LabStructure nb = side == 0 ? b.with_set(name, 0) : b.with_set(name, mask);
        alice_line(na, nb, r - 1, ctx, rounds);
        return;
      }
      if (mask == limit) break;
      ++mask;
    }
  }
}

}  // namespace

GameTrace ef_game_search(const LabStructure& a, const LabStructure& b, int rho,
                         const EfLimits& limits) {
  if (!LabStructure::same_vocabulary(a, b))
    throw std::invalid_argument("structures have different vocabularies");
  check_guard(a, rho, limits);
  check_guard(b, rho, limits);
  GameCtx ctx;
  GameTrace trace;
  if (bob_wins(a, b, rho, ctx)) {
    trace.winner = Player::bob;
    return trace;
  }
  trace.winner = Player::alice;
  alice_line(a, b, rho, ctx, trace.rounds);
  return trace;
}

std::string render_trace(const GameTrace& trace, const LabStructure& a, const LabStructure& b) {
  std::string out = trace.winner == Player::bob ? "winner: Bob\n" : "winner: Alice\n";
  auto element = [](const LabStructure& s, int v) {
    const std::string& n = s.node_names()[v];
    return n.empty() ? std::string("e") : n;
  };
  auto set_text = [&](const LabStructure& s, std::uint64_t mask) {
    std::string t = "{";
    bool first = true;
    for (int v = 0; v < s.size(); ++v)
      if ((mask >> v) & 1) {
        if (!first) t += ",";
        t += element(s, v);
        first = false;
      }
    return t + "}";
  };
  int round_no = 1;
  for (const auto& r : trace.rounds) {
    const LabStructure& src = r.alice_side == 0 ? a : b;
    const LabStructure& dst = r.alice_side == 0 ? b : a;
    out += "round " + std::to_string(round_no++) + ": Alice picks ";
    out += r.set_move ? "set " + set_text(src, r.alice_choice)
                      : "element " + element(src, static_cast<int>(r.alice_choice));
    out += r.alice_side == 0 ? " in the left structure" : " in the right structure";
    if (r.bob_responded) {
      out += "; Bob replies ";
      out += r.set_move ? "set " + set_text(dst, r.bob_response)
                        : "element " + element(dst, static_cast<int>(r.bob_response));
    } else {
      out += "; Bob has no reply";
    }
    out += "\n";
  }
  return out;
}

}  // namespace triff::msolab
