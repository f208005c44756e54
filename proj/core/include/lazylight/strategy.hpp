#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "lazylight/outcome.hpp"

namespace lazylight {

struct Honest {};
/// Honest prover whose view trails the union ledger by `lag` entries.
struct HonestLag {
  std::uint64_t lag = 0;
};

enum class LeafField { Tx, State };

struct CorruptLeaf {
  std::uint64_t index = 0;
  LeafField field = LeafField::State;
};
struct TruncatedLedger {
  std::uint64_t k = 0;
};
/// Extends past the honest views with real transactions and a bad state at `bad_at`.
struct FabricatedSuffix {
  std::uint64_t bad_at = 0;
};
struct Staller {
  std::uint32_t depth = 1;
};
struct GarbageChildren {
  std::uint32_t depth = 1;
};
struct WrongClaimProof {};
struct EquivocatingSizes {};
struct InvalidQueryChallenger {};

using Behavior = std::variant<Honest, HonestLag, CorruptLeaf, TruncatedLedger, FabricatedSuffix, Staller,
                              GarbageChildren, WrongClaimProof, EquivocatingSizes, InvalidQueryChallenger>;

enum class Role { Challenger, Responder };

bool is_honest(const Behavior& b) noexcept;
std::string behavior_name(const Behavior& b);

/// The rule by which `b` loses a game against an honest counterparty when it
/// plays `role`; ResponderDefended for strategies that lose as challenger by
/// the responder surviving every check.
Reason documented_reason(const Behavior& b, Role role);

}  // namespace lazylight
