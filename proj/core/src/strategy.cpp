#include "lazylight/strategy.hpp"

namespace lazylight {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool is_honest(const Behavior& b) noexcept {
  return std::holds_alternative<Honest>(b) || std::holds_alternative<HonestLag>(b);
}

std::string behavior_name(const Behavior& b) {
  return std::visit(Overloaded{
                        [](const Honest&) { return std::string("honest"); },
                        [](const HonestLag&) { return std::string("honest_lag"); },
                        [](const CorruptLeaf&) { return std::string("corrupt_leaf"); },
                        [](const TruncatedLedger&) { return std::string("truncated_ledger"); },
                        [](const FabricatedSuffix&) { return std::string("fabricated_suffix"); },
                        [](const Staller&) { return std::string("staller"); },
                        [](const GarbageChildren&) { return std::string("garbage_children"); },
                        [](const WrongClaimProof&) { return std::string("wrong_claim_proof"); },
                        [](const EquivocatingSizes&) { return std::string("equivocating_sizes"); },
                        [](const InvalidQueryChallenger&) { return std::string("invalid_query_challenger"); },
                    },
                    b);
}

Reason documented_reason(const Behavior& b, Role role) {
  const bool challenger = role == Role::Challenger;
  return std::visit(Overloaded{
                        [](const Honest&) { return Reason::NestedMMRs; },
                        [](const HonestLag&) { return Reason::NestedMMRs; },
                        [challenger](const CorruptLeaf& c) {
                          if (challenger) return Reason::ResponderDefended;
                          if (c.index == 0) return Reason::BadGenesis;
                          return c.field == LeafField::Tx ? Reason::NotAdjacent : Reason::BadTransition;
                        },
                        [](const TruncatedLedger&) { return Reason::ResponderTooShort; },
                        [](const FabricatedSuffix&) { return Reason::SuffixBadTransition; },
                        [challenger](const Staller&) {
                          return challenger ? Reason::ChallengerTimeout : Reason::ResponderTimeout;
                        },
                        [challenger](const GarbageChildren&) {
                          return challenger ? Reason::ResponderDefended : Reason::ChildrenMismatch;
                        },
                        [](const WrongClaimProof&) { return Reason::InvalidClaim; },
                        [](const EquivocatingSizes&) { return Reason::InvalidClaim; },
                        [](const InvalidQueryChallenger&) { return Reason::InvalidQuery; },
                    },
                    b);
}

}  // namespace lazylight
