#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lazylight/codec.hpp"

namespace lazylight {

struct NetworkConfig {
  double delta = 0.013;        // seconds per hop
  double bandwidth = 290e6;    // bits per second
  unsigned arity = 2;
  std::uint64_t alpha = 4;
  std::uint64_t u = 4;
  std::uint64_t nu = 1;
  std::uint64_t seed = 1;

  void validate() const;
  std::uint64_t monologue_cap() const { return alpha * (u + nu); }
};

using PartyId = std::uint32_t;
inline constexpr PartyId kVerifierId = 0;

enum class MessageKind : std::uint8_t {
  GetSize,
  SizeReply,
  GetClaim,
  ClaimReply,
  ChallengerStart,
  ChallengerTurn,
  Query,
  Suffix,
  OpenNode,
  Children,
  RevealLeaf,
  LeafReveal,
  AdjacencyRequest,
  AdjacencyProof,
  Refusal,
  WitnessRequest,
  Witness,
  StateQuery,
  StateReply,
};

std::string_view to_string(MessageKind kind) noexcept;

struct Message {
  MessageKind kind = MessageKind::GetSize;
  Bytes payload;
};

struct Cost {
  std::uint64_t bits = 0;
  double seconds = 0;
};

/// Serialized size and transmission time of one message at bandwidth C.
Cost account_cost(const Message& msg, const NetworkConfig& config);

class Party {
 public:
  virtual ~Party() = default;
  /// Handles a delivered request; returning nullopt withholds the reply.
  virtual std::optional<Message> handle(PartyId from, const Message& msg) = 0;
};

struct Envelope {
  PartyId from = 0;
  PartyId to = 0;
  std::uint64_t seq = 0;
  std::uint64_t sent_round = 0;
  bool expects_reply = false;
  Message msg;
};

struct TranscriptEvent {
  std::uint64_t round = 0;
  std::string type;  // "message", "timeout", "adjudication", "oracle"
  PartyId from = 0;
  PartyId to = 0;
  std::string kind;
  std::string detail;
};

struct GameTranscript {
  std::vector<TranscriptEvent> events;

  std::string to_jsonl() const;
  std::size_t message_count() const;
};

struct NetworkStats {
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
  double sim_seconds = 0;
};

/// Synchronous rounds: a message sent in round r is delivered at the start of
/// round r + 1, in (sender, sequence) order. The verifier (id 0) relays
/// between provers, so only prover-originated bits are charged bandwidth time.
class Network {
 public:
  explicit Network(NetworkConfig config);

  const NetworkConfig& config() const { return config_; }
  PartyId add_party(Party* party);
  std::size_t party_count() const { return parties_.size(); }

  void send(PartyId from, PartyId to, Message msg, bool expects_reply);
  std::vector<Envelope> advance_round();
  /// Verifier request: two rounds, returns the reply or nullopt on timeout.
  std::optional<Message> request(PartyId to, Message msg);

  std::uint64_t round() const { return round_; }
  bool timed_out(PartyId party) const;
  const NetworkStats& stats() const { return stats_; }

  void set_transcript(GameTranscript* transcript) { transcript_ = transcript; }
  GameTranscript* transcript() const { return transcript_; }
  void note(const std::string& type, PartyId from, PartyId to, const std::string& kind, const std::string& detail);

 private:
  struct Owed {
    PartyId party;
    PartyId to;
    std::uint64_t due_round;
  };

  NetworkConfig config_;
  std::vector<Party*> parties_;  // index 0 is the verifier and has no handler
  std::vector<Envelope> in_flight_;
  std::vector<Envelope> verifier_inbox_;
  std::vector<Owed> owed_;
  std::map<PartyId, bool> timed_out_;
  std::uint64_t round_ = 0;
  std::uint64_t seq_ = 0;
  NetworkStats stats_;
  GameTranscript* transcript_ = nullptr;
};

}  // namespace lazylight
