#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lazylight/claim.hpp"
#include "lazylight/codec.hpp"
#include "lazylight/ledger.hpp"
#include "lazylight/simnet.hpp"
#include "lazylight/smt.hpp"

namespace lazylight {

struct ChallengerStartMsg {
  std::uint64_t game = 0;
  Peaks responder_peaks;
  std::uint64_t responder_length = 0;
  std::uint64_t cap = 0;
};

struct ChallengerTurnMsg {
  std::uint64_t game = 0;
  std::vector<Digest> children;
};

/// Peak index on the first query, child index afterwards.
struct QueryMsg {
  std::uint64_t index = 0;
};

struct SuffixMsg {
  std::vector<AugmentedEntry> entries;
};

/// Addresses a node of the responder's tree `peak` by child indices from its root.
struct NodeRequestMsg {
  std::uint64_t game = 0;
  std::uint64_t peak = 0;
  std::vector<std::uint32_t> path;
};

struct ChildrenMsg {
  std::vector<Digest> children;
};

struct LeafRevealMsg {
  AugmentedEntry entry;
  std::optional<AugmentedEntry> prev;
  InclusionProof prev_proof;
};

struct AdjacencyRequestMsg {
  std::optional<Transaction> prev;
  Transaction next;
};

struct WitnessRequestMsg {
  std::uint64_t pre_index = 0;
  Transaction tx;
  StateCommitment pre;
};

struct StateQueryMsg {
  Key key = 0;
};

struct StateReplyMsg {
  std::optional<Amount> value;
  SmtProof proof;
};

Message to_message(const ChallengerStartMsg& m);
Message to_message(const ChallengerTurnMsg& m);
Message to_message(const QueryMsg& m);
Message to_message(const SuffixMsg& m);
Message to_message(const NodeRequestMsg& m, MessageKind kind);
Message to_message(const ChildrenMsg& m);
Message to_message(const LeafRevealMsg& m);
Message to_message(const AdjacencyRequestMsg& m);
Message to_message(const WitnessRequestMsg& m);
Message to_message(const StateQueryMsg& m);
Message to_message(const StateReplyMsg& m);
Message size_message(std::uint64_t size);
Message claim_message(const Claim& claim);

// Decoders throw Error(DecodeError) on malformed payloads.
ChallengerStartMsg decode_challenger_start(ByteView b);
ChallengerTurnMsg decode_challenger_turn(ByteView b);
QueryMsg decode_query(ByteView b);
SuffixMsg decode_suffix(ByteView b);
NodeRequestMsg decode_node_request(ByteView b);
ChildrenMsg decode_children(ByteView b);
LeafRevealMsg decode_leaf_reveal(ByteView b);
AdjacencyRequestMsg decode_adjacency_request(ByteView b);
WitnessRequestMsg decode_witness_request(ByteView b);
StateQueryMsg decode_state_query(ByteView b);
StateReplyMsg decode_state_reply(ByteView b);
std::uint64_t decode_size(ByteView b);
Claim decode_claim_message(ByteView b);

}  // namespace lazylight
