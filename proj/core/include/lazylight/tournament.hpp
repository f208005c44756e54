#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lazylight/games.hpp"

namespace lazylight {

struct TournamentResult {
  PartyId winner = 0;
  Claim claim;
  std::uint64_t games_played = 0;
  std::uint64_t merged = 0;        // identical claims joined without a game
  std::uint64_t total_rounds = 0;  // interactive exchanges summed over games
  std::uint64_t network_rounds = 0;
  std::uint64_t total_bytes = 0;
  double sim_seconds = 0;
  std::vector<Outcome> games;
  std::vector<PartyId> eliminated;  // in elimination order
};

/// Elimination over `provers`, which must already be ordered by announced
/// size, largest first. Every prover except the pair in a game may be asked
/// by the consensus oracle.
TournamentResult run_tournament(Verifier& verifier, std::span<const PartyId> provers);

/// Orders provers by announced size, largest first; ties keep input order.
std::vector<PartyId> order_by_size(Verifier& verifier, std::span<const PartyId> provers);

}  // namespace lazylight
