#pragma once

// Rank-rho equivalence two ways: canonical rank types computed by recursion
// over single-point and single-set expansions, and exhaustive minimax search
// of the rho-round game with point and set moves. The two must always agree;
// tests lean on that.

#include <cstdint>
#include <string>
#include <vector>

#include "triff/msolab/structure.hpp"

namespace triff::msolab {

struct EfLimits {
  // admission bound on (N + 2^N)^rho with N the larger domain
  double budget = static_cast<double>(std::uint64_t{1} << 25);
  int max_domain = 24;
};

// Canonical serialization of the atomic facts among the named constants:
// equalities, successor links, letters, and set memberships. Equal diagrams
// are exactly rank-0 equivalence (and the game's partial-isomorphism check).
std::string atomic_diagram(const LabStructure& s);

struct RankType {
  int rank = 0;
  std::string digest;
  bool operator==(const RankType&) const = default;
};

RankType rank_type(const LabStructure& s, int rho, const EfLimits& limits = {});

// rank_type(a) == rank_type(b); throws std::invalid_argument on vocabulary
// mismatch, std::domain_error past the guard.
bool ef_equivalent(const LabStructure& a, const LabStructure& b, int rho,
                   const EfLimits& limits = {});

enum class Player { alice, bob };

struct GameRound {
  bool set_move = false;
  int alice_side = 0;               // 0 = left structure, 1 = right
  std::uint64_t alice_choice = 0;   // element index or member mask
  bool bob_responded = false;
  std::uint64_t bob_response = 0;
};

struct GameTrace {
  Player winner = Player::bob;
  std::vector<GameRound> rounds;  // a winning line for Alice; empty for Bob
};

// Exhaustive minimax over every move; when Alice wins the trace holds one
// optimal line (her winning move each round, Bob's first reply).
GameTrace ef_game_search(const LabStructure& a, const LabStructure& b, int rho,
                         const EfLimits& limits = {});

std::string render_trace(const GameTrace& trace, const LabStructure& a, const LabStructure& b);

}  // namespace triff::msolab
