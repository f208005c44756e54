#include "lazylight/simnet.hpp"

#include <algorithm>
#include "json.hpp"

#include "lazylight/error.hpp"

namespace lazylight {

void NetworkConfig::validate() const {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidParams, "delta must be positive");
  if (!(bandwidth > 0)) throw Error(ErrorCode::InvalidParams, "bandwidth must be positive");
  if (arity < 2) throw Error(ErrorCode::InvalidParams, "arity must be at least 2");
  if (alpha < 1) throw Error(ErrorCode::InvalidParams, "alpha must be at least 1");
  if (u < 1) throw Error(ErrorCode::InvalidParams, "u must be at least 1");
}

std::string_view to_string(MessageKind kind) noexcept {
  switch (kind) {
    case MessageKind::GetSize: return "GetSize";
    case MessageKind::SizeReply: return "SizeReply";
    case MessageKind::GetClaim: return "GetClaim";
    case MessageKind::ClaimReply: return "ClaimReply";
    case MessageKind::ChallengerStart: return "ChallengerStart";
    case MessageKind::ChallengerTurn: return "ChallengerTurn";
    case MessageKind::Query: return "Query";
    case MessageKind::Suffix: return "Suffix";
    case MessageKind::OpenNode: return "OpenNode";
    case MessageKind::Children: return "Children";
    case MessageKind::RevealLeaf: return "RevealLeaf";
    case MessageKind::LeafReveal: return "LeafReveal";
    case MessageKind::AdjacencyRequest: return "AdjacencyRequest";
    case MessageKind::AdjacencyProof: return "AdjacencyProof";
    case MessageKind::Refusal: return "Refusal";
    case MessageKind::WitnessRequest: return "WitnessRequest";
    case MessageKind::Witness: return "Witness";
    case MessageKind::StateQuery: return "StateQuery";
    case MessageKind::StateReply: return "StateReply";
  }
  return "Unknown";
}

Cost account_cost(const Message& msg, const NetworkConfig& config) {
  Cost c;
  c.bits = static_cast<std::uint64_t>(msg.payload.size()) * 8;
  c.seconds = static_cast<double>(c.bits) / config.bandwidth;
  return c;
}

std::string GameTranscript::to_jsonl() const {
  std::string out;
  for (const auto& e : events) {
    nlohmann::json j;
    j["round"] = e.round;
    j["type"] = e.type;
    j["from"] = e.from;
    j["to"] = e.to;
    j["kind"] = e.kind;
    j["detail"] = e.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::size_t GameTranscript::message_count() const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [](const TranscriptEvent& e) { return e.type == "message"; }));
}

Network::Network(NetworkConfig config) : config_(config) {
  config_.validate();
  parties_.push_back(nullptr);
}

PartyId Network::add_party(Party* party) {
  parties_.push_back(party);
  return static_cast<PartyId>(parties_.size() - 1);
}

void Network::send(PartyId from, PartyId to, Message msg, bool expects_reply) {
  if (from >= parties_.size() || to >= parties_.size()) throw Error(ErrorCode::InvalidParams, "unknown party");
  const Cost cost = account_cost(msg, config_);
  if (from != kVerifierId) stats_.sim_seconds += cost.seconds;
  stats_.messages += 1;
  stats_.bytes += msg.payload.size();
  in_flight_.push_back(Envelope{from, to, seq_++, round_, expects_reply, std::move(msg)});
}

std::vector<Envelope> Network::advance_round() {
  ++round_;
  stats_.rounds += 1;
  stats_.sim_seconds += config_.delta;

  std::vector<Envelope> delivering;
  delivering.swap(in_flight_);
  std::stable_sort(delivering.begin(), delivering.end(), [](const Envelope& a, const Envelope& b) {
    return a.from != b.from ? a.from < b.from : a.seq < b.seq;
  });

  // A party that owed a reply last round and sent none is now timed out.
  std::vector<Owed> still_owed;
  for (const auto& o : owed_) {
    if (o.due_round <= round_) {
      timed_out_[o.party] = true;
      note("timeout", o.party, o.to, "", "no reply within one round");
    } else {
      still_owed.push_back(o);
    }
  }
  owed_ = std::move(still_owed);

  for (const auto& env : delivering) {
    if (transcript_) {
      transcript_->events.push_back(
          TranscriptEvent{round_, "message", env.from, env.to, std::string(to_string(env.msg.kind)), to_hex(env.msg.payload)});
    }
    if (env.to == kVerifierId) {
      verifier_inbox_.push_back(env);
      continue;
    }
    Party* party = parties_[env.to];
    std::optional<Message> reply = party ? party->handle(env.from, env.msg) : std::nullopt;
    if (reply) {
      send(env.to, env.from, std::move(*reply), false);
    } else if (env.expects_reply) {
      owed_.push_back(Owed{env.to, env.from, round_ + 1});
    }
  }
  return delivering;
}

std::optional<Message> Network::request(PartyId to, Message msg) {
  verifier_inbox_.clear();
  send(kVerifierId, to, std::move(msg), true);
  advance_round();
  advance_round();
  for (auto& env : verifier_inbox_) {
    if (env.from == to) {
      Message reply = std::move(env.msg);
      verifier_inbox_.clear();
      return reply;
    }
  }
  return std::nullopt;
}

bool Network::timed_out(PartyId party) const {
  auto it = timed_out_.find(party);
  return it != timed_out_.end() && it->second;
}

void Network::note(const std::string& type, PartyId from, PartyId to, const std::string& kind,
                   const std::string& detail) {
  if (transcript_) transcript_->events.push_back(TranscriptEvent{round_, type, from, to, kind, detail});
}

}  // namespace lazylight
