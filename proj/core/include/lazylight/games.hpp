#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lazylight/claim.hpp"
#include "lazylight/execution.hpp"
#include "lazylight/messages.hpp"
#include "lazylight/mmr.hpp"
#include "lazylight/oracle_backend.hpp"
#include "lazylight/outcome.hpp"
#include "lazylight/simnet.hpp"

namespace lazylight {

/// Bisect the responder's tree `responder_peak` against the challenger's
/// leaves [offset, offset + size).
struct BisectTarget {
  std::size_t responder_peak = 0;
  std::uint64_t offset = 0;
  std::uint64_t size = 0;

  bool operator==(const BisectTarget&) const = default;
};

/// The responder's peaks all agree with the challenger's data.
struct MonologueAction {
  bool operator==(const MonologueAction&) const = default;
};

using ZoomAction = std::variant<BisectTarget, MonologueAction>;

/// Challenger side of the zooming phase; the challenger must not be shorter.
ZoomAction peaks_vs_peaks(const MountainRange& challenger, const Peaks& responder);
/// Descent through one challenger tree (leaves starting at `tree_offset`)
/// covering the responder's peaks from `first_peak` on.
ZoomAction tree_vs_peak(const MerkleTree& tree, std::uint64_t tree_offset, const Peaks& responder,
                        std::size_t first_peak);

/// Index of the first differing child.
std::uint32_t challenger_next(std::span<const Digest> own, std::span<const Digest> responder);

/// Ceiling of log base m of the tree size: the most inner-node openings a game may take.
std::uint64_t max_inner_queries(std::uint64_t tree_leaves, unsigned arity);

/// A prover as seen by the verifier: its announced size and claim.
struct Contender {
  PartyId id = 0;
  std::optional<std::uint64_t> size;
  std::optional<Claim> claim;
};

class Verifier {
 public:
  Verifier(Network& net, std::shared_ptr<const OracleBackend> oracles, StateCommitment genesis);

  Network& network() { return net_; }
  const StateCommitment& genesis() const { return genesis_; }

  std::optional<std::uint64_t> get_size(PartyId p);
  std::optional<Claim> get_claim(PartyId p);
  Contender contender(PartyId p);
  Contender contender(PartyId p, std::optional<std::uint64_t> size);
  bool claim_valid(const Contender& c) const;

  /// Plays a challenge game with fixed roles. `suppliers` are additional
  /// provers the consensus oracle may ask. Throws IdenticalClaims when both
  /// claims commit to the same ledger.
  Outcome run_challenge_game(const Contender& challenger, const Contender& responder,
                             std::span<const PartyId> suppliers = {});
  /// Larger claimed length challenges; ties go to `tie_challenger`.
  Outcome run_challenge_game_auto(const Contender& a, const Contender& b, PartyId tie_challenger,
                                  std::span<const PartyId> suppliers = {});

  bool consensus_query(const Transaction* prev, const Transaction& next, std::span<const PartyId> suppliers);
  OracleVerdict execution_query(PartyId supplier, std::uint64_t pre_index, const Transaction& tx,
                                const StateCommitment& pre, const StateCommitment& post);

  /// Value of `key` in the winner's state, checked against its claim.
  std::optional<StateReplyMsg> final_state_query(PartyId prover, const Claim& claim, Key key);

 private:
  Outcome run_bisection(const Contender& challenger, const Contender& responder, std::size_t peak,
                        std::span<const PartyId> suppliers, Outcome out);
  Outcome run_suffix_monologue(const Contender& challenger, const Contender& responder, const SuffixMsg& suffix,
                               std::span<const PartyId> suppliers, Outcome out);
  Outcome adjudicate_leaf(const Contender& responder, std::size_t peak, std::uint64_t local, const Digest& leaf,
                          const std::optional<Message>& reply, std::span<const PartyId> suppliers, Outcome out);
  void note_adjudication(const Outcome& out);

  Network& net_;
  std::shared_ptr<const OracleBackend> oracles_;
  StateCommitment genesis_;
  std::uint64_t next_game_ = 1;
};

}  // namespace lazylight
