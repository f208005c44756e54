#include "lazylight/messages.hpp"

#include "lazylight/error.hpp"

namespace lazylight {

namespace {

Message make(MessageKind kind, Encoder& enc) { return Message{kind, enc.take()}; }

template <typename F>
auto decode_all(ByteView b, F&& f) {
  Decoder dec(b);
  auto value = f(dec);
  dec.expect_done();
  return value;
}

}  // namespace

Message to_message(const ChallengerStartMsg& m) {
  Encoder enc;
  enc.u64(m.game);
  encode_into(enc, m.responder_peaks);
  enc.u64(m.responder_length).u64(m.cap);
  return make(MessageKind::ChallengerStart, enc);
}

Message to_message(const ChallengerTurnMsg& m) {
  Encoder enc;
  enc.u64(m.game).digests(m.children);
  return make(MessageKind::ChallengerTurn, enc);
}

Message to_message(const QueryMsg& m) {
  Encoder enc;
  enc.varint(m.index);
  return make(MessageKind::Query, enc);
}

Message to_message(const SuffixMsg& m) {
  Encoder enc;
  enc.u64(m.entries.size());
  for (const auto& e : m.entries) encode_into(enc, e);
  return make(MessageKind::Suffix, enc);
}

Message to_message(const NodeRequestMsg& m, MessageKind kind) {
  Encoder enc;
  enc.u64(m.game).u64(m.peak).u64(m.path.size());
  for (auto p : m.path) enc.varint(p);
  return make(kind, enc);
}

Message to_message(const ChildrenMsg& m) {
  Encoder enc;
  enc.digests(m.children);
  return make(MessageKind::Children, enc);
}

Message to_message(const LeafRevealMsg& m) {
  Encoder enc;
  encode_into(enc, m.entry);
  enc.u8(m.prev ? 1 : 0);
  if (m.prev) {
    encode_into(enc, *m.prev);
    encode_into(enc, m.prev_proof);
  }
  return make(MessageKind::LeafReveal, enc);
}

Message to_message(const AdjacencyRequestMsg& m) {
  Encoder enc;
  enc.u8(m.prev ? 1 : 0);
  if (m.prev) encode_into(enc, *m.prev);
  encode_into(enc, m.next);
  return make(MessageKind::AdjacencyRequest, enc);
}

Message to_message(const WitnessRequestMsg& m) {
  Encoder enc;
  enc.u64(m.pre_index);
  encode_into(enc, m.tx);
  enc.digest(m.pre.digest);
  return make(MessageKind::WitnessRequest, enc);
}

Message to_message(const StateQueryMsg& m) {
  Encoder enc;
  enc.u64(m.key);
  return make(MessageKind::StateQuery, enc);
}

Message to_message(const StateReplyMsg& m) {
  Encoder enc;
  enc.u8(m.value ? 1 : 0);
  if (m.value) enc.u64(*m.value);
  encode_into(enc, m.proof);
  return make(MessageKind::StateReply, enc);
}

Message size_message(std::uint64_t size) {
  Encoder enc;
  enc.u64(size);
  return make(MessageKind::SizeReply, enc);
}

Message claim_message(const Claim& claim) { return Message{MessageKind::ClaimReply, encode(claim)}; }

ChallengerStartMsg decode_challenger_start(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    ChallengerStartMsg m;
    m.game = d.u64();
    m.responder_peaks = decode_peaks(d);
    m.responder_length = d.u64();
    m.cap = d.u64();
    return m;
  });
}

ChallengerTurnMsg decode_challenger_turn(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    ChallengerTurnMsg m;
    m.game = d.u64();
    m.children = d.digests();
    return m;
  });
}

QueryMsg decode_query(ByteView b) {
  return decode_all(b, [](Decoder& d) { return QueryMsg{d.varint()}; });
}

SuffixMsg decode_suffix(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    SuffixMsg m;
    const std::uint64_t n = d.count(1 + kDigestSize);
    for (std::uint64_t i = 0; i < n; ++i) m.entries.push_back(decode_entry(d));
    return m;
  });
}

NodeRequestMsg decode_node_request(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    NodeRequestMsg m;
    m.game = d.u64();
    m.peak = d.u64();
    const std::uint64_t n = d.count(1);
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::uint64_t p = d.varint();
      if (p > 0xffffffffULL) throw Error(ErrorCode::DecodeError, "child index too large");
      m.path.push_back(static_cast<std::uint32_t>(p));
    }
    return m;
  });
}

ChildrenMsg decode_children(ByteView b) {
  return decode_all(b, [](Decoder& d) { return ChildrenMsg{d.digests()}; });
}

LeafRevealMsg decode_leaf_reveal(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    LeafRevealMsg m;
    m.entry = decode_entry(d);
    const std::uint8_t has_prev = d.u8();
    if (has_prev > 1) throw Error(ErrorCode::DecodeError, "bad reveal flag");
    if (has_prev) {
      m.prev = decode_entry(d);
      m.prev_proof = decode_inclusion_proof(d);
    }
    return m;
  });
}

AdjacencyRequestMsg decode_adjacency_request(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    AdjacencyRequestMsg m;
    const std::uint8_t has_prev = d.u8();
    if (has_prev > 1) throw Error(ErrorCode::DecodeError, "bad adjacency flag");
    if (has_prev) m.prev = decode_transaction(d);
    m.next = decode_transaction(d);
    return m;
  });
}

WitnessRequestMsg decode_witness_request(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    WitnessRequestMsg m;
    m.pre_index = d.u64();
    m.tx = decode_transaction(d);
    m.pre.digest = d.digest();
    return m;
  });
}

StateQueryMsg decode_state_query(ByteView b) {
  return decode_all(b, [](Decoder& d) { return StateQueryMsg{d.u64()}; });
}

StateReplyMsg decode_state_reply(ByteView b) {
  return decode_all(b, [](Decoder& d) {
    StateReplyMsg m;
    const std::uint8_t present = d.u8();
    if (present > 1) throw Error(ErrorCode::DecodeError, "bad presence flag");
    if (present) m.value = d.u64();
    m.proof = decode_smt_proof(d);
    return m;
  });
}

std::uint64_t decode_size(ByteView b) {
  return decode_all(b, [](Decoder& d) { return d.u64(); });
}

Claim decode_claim_message(ByteView b) {
  return decode_all(b, [](Decoder& d) { return decode_claim(d); });
}

}  // namespace lazylight
