#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "lazylight/ledger.hpp"
#include "lazylight/simnet.hpp"

namespace lazylight {

enum class Result { ChallengerWins, ResponderWins, NestedMMRs };

/// Which rule decided a game.
enum class Reason {
  ResponderTimeout,     // responder failed to answer within a round
  MalformedResponse,    // responder reply is not syntactically valid
  ChildrenMismatch,     // opened children do not hash to the parent
  BadPredecessorProof,  // entry j-1 does not open against the tree or previous peak
  NotAdjacent,          // consensus oracle rejects (tx_{j-1}, tx_j)
  BadTransition,        // execution oracle rejects the state transition at j
  BadGenesis,           // entry 0 is not (empty, genesis commitment)
  InvalidQuery,         // challenger sent an out-of-range or malformed query
  ChallengerTimeout,    // challenger failed to answer within a round
  ResponderDefended,    // every check on the revealed leaf passed
  SuffixMalformed,
  SuffixNotAdjacent,
  SuffixBadTransition,
  SuffixInconsistent,   // complete suffix does not end in the challenger's claimed entry
  ResponderTooShort,    // challenger proved the capped number of extension entries
  NestedMMRs,
  InvalidClaim,
};

std::string_view to_string(Result r) noexcept;
std::string_view to_string(Reason r) noexcept;

struct Pinpoint {
  std::uint64_t j = 0;
  AugmentedEntry entry;
  std::optional<AugmentedEntry> prev;
};

struct Outcome {
  Result result = Result::ResponderWins;
  Reason reason = Reason::ResponderDefended;
  PartyId challenger = 0;
  PartyId responder = 0;
  std::optional<Pinpoint> pinpoint;
  std::uint64_t exchanges = 0;      // challenger query plus responder answer
  std::uint64_t openings = 0;       // inner-node openings
  std::uint64_t suffix_entries = 0; // entries revealed in a monologue
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
  double sim_seconds = 0;

  bool challenger_lost() const { return result == Result::ResponderWins; }
  bool responder_lost() const { return result == Result::ChallengerWins; }
  PartyId loser() const { return result == Result::ChallengerWins ? responder : challenger; }
};

}  // namespace lazylight
