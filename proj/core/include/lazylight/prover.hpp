#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "lazylight/blocks.hpp"
#include "lazylight/claim.hpp"
#include "lazylight/entries.hpp"
#include "lazylight/messages.hpp"
#include "lazylight/mmr.hpp"
#include "lazylight/simnet.hpp"
#include "lazylight/smt.hpp"
#include "lazylight/strategy.hpp"

namespace lazylight {

/// Extra balance credited right after entry `index` is applied, producing a
/// self-consistent fork from that point on.
struct Mint {
  std::uint64_t index = 0;
  Key key = 0;
  Amount amount = 0;
};

/// What a prover holds: its augmented ledger, the MMR over it and, for
/// executable ledgers, the means to rebuild states and prove adjacency.
struct ProverData {
  std::shared_ptr<const EntrySource> entries;
  MountainRange mmr;
  std::shared_ptr<const SparseState> genesis;  // null for stub ledgers
  std::optional<Mint> mint;
  std::shared_ptr<const BlockStore> blocks;  // null for stub ledgers

  std::uint64_t length() const { return entries->size(); }
  Claim honest_claim() const;
};

std::shared_ptr<const ProverData> make_prover_data(std::shared_ptr<const EntrySource> entries, unsigned arity,
                                                   std::shared_ptr<const SparseState> genesis = nullptr,
                                                   std::optional<Mint> mint = std::nullopt,
                                                   std::shared_ptr<const BlockStore> blocks = nullptr);

class Prover final : public Party {
 public:
  Prover(std::string name, Behavior behavior, std::shared_ptr<const ProverData> data, std::uint64_t seed);

  std::optional<Message> handle(PartyId from, const Message& msg) override;

  const std::string& name() const { return name_; }
  const Behavior& behavior() const { return behavior_; }
  bool honest() const { return is_honest(behavior_); }
  const ProverData& data() const { return *data_; }
  std::uint64_t announced_size() const;
  Claim claim() const;
  /// State after entry i as this prover believes it (executable ledgers only).
  SparseState state_at(std::uint64_t i) const;

 private:
  struct ChallengerSession {
    MerkleTree reference;
    std::size_t level = 0;
    std::uint64_t index = 0;
  };

  bool stalls();
  std::optional<Message> on_challenger_start(const ChallengerStartMsg& m);
  std::optional<Message> on_challenger_turn(const ChallengerTurnMsg& m);
  std::optional<Message> on_open(const NodeRequestMsg& m);
  std::optional<Message> on_reveal(const NodeRequestMsg& m);
  std::optional<Message> on_adjacency(const AdjacencyRequestMsg& m) const;
  std::optional<Message> on_witness(const WitnessRequestMsg& m) const;
  std::optional<Message> on_state_query(const StateQueryMsg& m) const;

  std::string name_;
  Behavior behavior_;
  std::shared_ptr<const ProverData> data_;
  std::mt19937_64 rng_;
  std::uint32_t game_requests_ = 0;
  std::uint32_t openings_ = 0;
  std::map<std::uint64_t, ChallengerSession> sessions_;
  mutable std::optional<std::pair<std::uint64_t, SparseState>> state_cache_;
};

}  // namespace lazylight
