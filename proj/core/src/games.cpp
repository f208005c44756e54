#include "lazylight/games.hpp"

#include <algorithm>

#include "lazylight/error.hpp"

namespace lazylight {

ZoomAction peaks_vs_peaks(const MountainRange& challenger, const Peaks& responder) {
  if (responder.total() > challenger.size()) throw Error(ErrorCode::InvalidParams, "challenger is shorter");
  std::uint64_t offset = 0;
  const auto& trees = challenger.trees();
  for (std::size_t p = 0; p < responder.sizes.size(); ++p) {
    const MerkleTree& tree = trees.at(p);
    const std::uint64_t rs = responder.sizes[p];
    if (tree.leaf_count() == rs) {
      if (tree.root() != responder.roots[p]) return BisectTarget{p, offset, rs};
      offset += rs;
      continue;
    }
    if (tree.leaf_count() < rs) throw Error(ErrorCode::InvalidParams, "responder peaks are not a prefix shape");
    return tree_vs_peak(tree, offset, responder, p);
  }
  return MonologueAction{};
}

ZoomAction tree_vs_peak(const MerkleTree& tree, std::uint64_t tree_offset, const Peaks& responder,
                        std::size_t first_peak) {
  std::uint64_t remaining = 0;
  for (std::size_t q = first_peak; q < responder.sizes.size(); ++q) remaining += responder.sizes[q];
  if (remaining >= tree.leaf_count()) throw Error(ErrorCode::InvalidParams, "peaks do not fit under the tree");
  std::uint64_t lo = 0;
  std::uint64_t size = tree.leaf_count();
  for (std::size_t p = first_peak; p < responder.sizes.size();) {
    const std::uint64_t half = size / 2;
    if (half > remaining) {
      size = half;
      continue;
    }
    // Here half equals the next responder peak size.
    if (subrange_root(tree, lo, half) != responder.roots[p]) return BisectTarget{p, tree_offset + lo, half};
    lo += half;
    remaining -= half;
    size = half;
    ++p;
  }
  return MonologueAction{};
}

std::uint32_t challenger_next(std::span<const Digest> own, std::span<const Digest> responder) {
  const std::size_t n = std::min(own.size(), responder.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (own[i] != responder[i]) return static_cast<std::uint32_t>(i);
  }
  if (own.size() != responder.size()) return static_cast<std::uint32_t>(n);
  throw Error(ErrorCode::NoDisagreement, "children agree");
}

std::uint64_t max_inner_queries(std::uint64_t tree_leaves, unsigned arity) { return tree_height(tree_leaves, arity); }

Verifier::Verifier(Network& net, std::shared_ptr<const OracleBackend> oracles, StateCommitment genesis)
    : net_(net), oracles_(std::move(oracles)), genesis_(genesis) {}

std::optional<std::uint64_t> Verifier::get_size(PartyId p) {
  auto reply = net_.request(p, Message{MessageKind::GetSize, {}});
  if (!reply || reply->kind != MessageKind::SizeReply) return std::nullopt;
  try {
    return decode_size(reply->payload);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<Claim> Verifier::get_claim(PartyId p) {
  auto reply = net_.request(p, Message{MessageKind::GetClaim, {}});
  if (!reply || reply->kind != MessageKind::ClaimReply) return std::nullopt;
  try {
    return decode_claim_message(reply->payload);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Contender Verifier::contender(PartyId p) { return contender(p, get_size(p)); }

Contender Verifier::contender(PartyId p, std::optional<std::uint64_t> size) { return Contender{p, size, get_claim(p)}; }

bool Verifier::claim_valid(const Contender& c) const {
  if (!c.claim || !c.size || c.claim->length != *c.size) return false;
  return claim_well_formed(*c.claim, net_.config().arity);
}

Outcome Verifier::run_challenge_game_auto(const Contender& a, const Contender& b, PartyId tie_challenger,
                                          std::span<const PartyId> suppliers) {
  auto length = [](const Contender& c) { return c.claim ? c.claim->length : c.size.value_or(0); };
  const bool a_challenges = length(a) > length(b) || (length(a) == length(b) && tie_challenger == a.id);
  return a_challenges ? run_challenge_game(a, b, suppliers) : run_challenge_game(b, a, suppliers);
}

Outcome Verifier::run_challenge_game(const Contender& challenger, const Contender& responder,
                                     std::span<const PartyId> suppliers) {
  const bool challenger_ok = claim_valid(challenger);
  const bool responder_ok = claim_valid(responder);
  if (challenger_ok && responder_ok && challenger.claim->same_commitment(*responder.claim)) {
    throw Error(ErrorCode::IdenticalClaims, "claims commit to the same ledger");
  }

  Outcome out;
  out.challenger = challenger.id;
  out.responder = responder.id;
  const NetworkStats before = net_.stats();
  auto finish = [&](Outcome o) {
    const NetworkStats& after = net_.stats();
    o.messages = after.messages - before.messages;
    o.bytes = after.bytes - before.bytes;
    o.sim_seconds = after.sim_seconds - before.sim_seconds;
    note_adjudication(o);
    return o;
  };
  auto decide = [&](Result r, Reason why) {
    out.result = r;
    out.reason = why;
    return finish(out);
  };

  if (!responder_ok) return decide(Result::ChallengerWins, Reason::InvalidClaim);
  if (!challenger_ok) return decide(Result::ResponderWins, Reason::InvalidClaim);
  if (challenger.claim->length < responder.claim->length) {
    throw Error(ErrorCode::InvalidParams, "challenger must claim at least the responder's length");
  }

  const std::uint64_t game = next_game_++;
  const Claim& rc = *responder.claim;
  auto reply = net_.request(challenger.id, to_message(ChallengerStartMsg{game, rc.peaks, rc.length,
                                                                         net_.config().monologue_cap()}));
  if (!reply) return decide(Result::ResponderWins, Reason::ChallengerTimeout);
  try {
    if (reply->kind == MessageKind::Query) {
      const QueryMsg q = decode_query(reply->payload);
      if (q.index >= rc.peaks.roots.size()) return decide(Result::ResponderWins, Reason::InvalidQuery);
      return finish(run_bisection(challenger, responder, static_cast<std::size_t>(q.index), suppliers, out));
    }
    if (reply->kind == MessageKind::Suffix) {
      if (challenger.claim->length == rc.length) return decide(Result::ResponderWins, Reason::InvalidQuery);
      SuffixMsg suffix;
      try {
        suffix = decode_suffix(reply->payload);
      } catch (const Error&) {
        return decide(Result::ResponderWins, Reason::SuffixMalformed);
      }
      return finish(run_suffix_monologue(challenger, responder, suffix, suppliers, out));
    }
  } catch (const Error&) {
  }
  return decide(Result::ResponderWins, Reason::InvalidQuery);
}

Outcome Verifier::run_bisection(const Contender& challenger, const Contender& responder, std::size_t peak,
                                std::span<const PartyId> suppliers, Outcome out) {
  const Claim& rc = *responder.claim;
  const unsigned m = net_.config().arity;
  const std::uint64_t tree_size = rc.peaks.sizes[peak];
  const std::uint64_t bound = max_inner_queries(tree_size, m);
  std::size_t level = tree_height(tree_size, m);
  std::uint64_t index = 0;
  Digest current = rc.peaks.roots[peak];
  NodeRequestMsg request{next_game_ - 1, peak, {}};
  auto decide = [&out](Result r, Reason why) {
    out.result = r;
    out.reason = why;
    return out;
  };

  while (level > 0) {
    if (out.openings >= bound) return decide(Result::ResponderWins, Reason::InvalidQuery);
    auto reply = net_.request(responder.id, to_message(request, MessageKind::OpenNode));
    ++out.exchanges;
    ++out.openings;
    if (!reply) return decide(Result::ChallengerWins, Reason::ResponderTimeout);
    ChildrenMsg children;
    try {
      if (reply->kind != MessageKind::Children) throw Error(ErrorCode::DecodeError, "unexpected reply");
      children = decode_children(reply->payload);
    } catch (const Error&) {
      return decide(Result::ChallengerWins, Reason::MalformedResponse);
    }
    if (children.children.size() != child_count(tree_size, m, level, index)) {
      return decide(Result::ChallengerWins, Reason::MalformedResponse);
    }
    if (inner_digest(children.children) != current) return decide(Result::ChallengerWins, Reason::ChildrenMismatch);

    auto query = net_.request(challenger.id, to_message(ChallengerTurnMsg{request.game, children.children}));
    if (!query) return decide(Result::ResponderWins, Reason::ChallengerTimeout);
    QueryMsg q;
    try {
      if (query->kind != MessageKind::Query) throw Error(ErrorCode::DecodeError, "unexpected reply");
      q = decode_query(query->payload);
    } catch (const Error&) {
      return decide(Result::ResponderWins, Reason::InvalidQuery);
    }
    if (q.index >= children.children.size()) return decide(Result::ResponderWins, Reason::InvalidQuery);
    current = children.children[q.index];
    request.path.push_back(static_cast<std::uint32_t>(q.index));
    index = index * m + q.index;
    --level;
  }

  auto reply = net_.request(responder.id, to_message(request, MessageKind::RevealLeaf));
  ++out.exchanges;
  return adjudicate_leaf(responder, peak, index, current, reply, suppliers, out);
}

Outcome Verifier::adjudicate_leaf(const Contender& responder, std::size_t peak, std::uint64_t local,
                                  const Digest& leaf, const std::optional<Message>& reply,
                                  std::span<const PartyId> suppliers, Outcome out) {
  const Claim& rc = *responder.claim;
  const unsigned m = net_.config().arity;
  auto decide = [&out](Result r, Reason why) {
    out.result = r;
    out.reason = why;
    return out;
  };
  if (!reply) return decide(Result::ChallengerWins, Reason::ResponderTimeout);
  LeafRevealMsg reveal;
  try {
    if (reply->kind != MessageKind::LeafReveal) throw Error(ErrorCode::DecodeError, "unexpected reply");
    reveal = decode_leaf_reveal(reply->payload);
  } catch (const Error&) {
    return decide(Result::ChallengerWins, Reason::MalformedResponse);
  }
  if (entry_leaf_digest(reveal.entry) != leaf) return decide(Result::ChallengerWins, Reason::ChildrenMismatch);

  std::uint64_t j = local;
  for (std::size_t p = 0; p < peak; ++p) j += rc.peaks.sizes[p];
  out.pinpoint = Pinpoint{j, reveal.entry, reveal.prev};

  const AugmentedEntry genesis_entry{std::nullopt, genesis_};
  if (j == 0) {
    return reveal.entry == genesis_entry ? decide(Result::ResponderWins, Reason::ResponderDefended)
                                         : decide(Result::ChallengerWins, Reason::BadGenesis);
  }
  if (!reveal.entry.tx || !reveal.prev) return decide(Result::ChallengerWins, Reason::MalformedResponse);

  const Bytes prev_bytes = encode(*reveal.prev);
  const bool proof_ok =
      local > 0 ? verify_inclusion(reveal.prev_proof, rc.peaks.roots[peak], local - 1, prev_bytes, m)
                : verify_inclusion(reveal.prev_proof, rc.peaks.roots[peak - 1], rc.peaks.sizes[peak - 1] - 1,
                                   prev_bytes, m);
  if (!proof_ok) return decide(Result::ChallengerWins, Reason::BadPredecessorProof);
  if (j == 1 && !(*reveal.prev == genesis_entry)) return decide(Result::ChallengerWins, Reason::BadGenesis);

  std::vector<PartyId> askers{responder.id};
  for (PartyId s : suppliers) {
    if (std::find(askers.begin(), askers.end(), s) == askers.end()) askers.push_back(s);
  }
  const Transaction* prev_tx = reveal.prev->tx ? &*reveal.prev->tx : nullptr;
  if (!consensus_query(prev_tx, *reveal.entry.tx, askers)) return decide(Result::ChallengerWins, Reason::NotAdjacent);

  const OracleVerdict v = execution_query(responder.id, j - 1, *reveal.entry.tx, reveal.prev->state, reveal.entry.state);
  if (v == OracleVerdict::Timeout) return decide(Result::ChallengerWins, Reason::ResponderTimeout);
  if (v != OracleVerdict::Accepted) return decide(Result::ChallengerWins, Reason::BadTransition);
  return decide(Result::ResponderWins, Reason::ResponderDefended);
}

Outcome Verifier::run_suffix_monologue(const Contender& challenger, const Contender& responder,
                                       const SuffixMsg& suffix, std::span<const PartyId> suppliers, Outcome out) {
  const Claim& cc = *challenger.claim;
  const Claim& rc = *responder.claim;
  const std::uint64_t cap = net_.config().monologue_cap();
  const std::uint64_t gap = cc.length - rc.length;
  const std::uint64_t expected = std::min(gap, cap);
  auto decide = [&out](Result r, Reason why) {
    out.result = r;
    out.reason = why;
    return out;
  };
  out.exchanges = 1;
  out.suffix_entries = suffix.entries.size();
  if (suffix.entries.size() != expected) return decide(Result::ResponderWins, Reason::SuffixMalformed);

  std::vector<PartyId> askers{challenger.id};
  for (PartyId s : suppliers) {
    if (std::find(askers.begin(), askers.end(), s) == askers.end()) askers.push_back(s);
  }
  const AugmentedEntry* prev = &rc.last_entry;
  for (std::uint64_t k = 0; k < suffix.entries.size(); ++k) {
    const AugmentedEntry& e = suffix.entries[k];
    if (!e.tx) return decide(Result::ResponderWins, Reason::SuffixMalformed);
    const Transaction* prev_tx = prev->tx ? &*prev->tx : nullptr;
    if (!consensus_query(prev_tx, *e.tx, askers)) return decide(Result::ResponderWins, Reason::SuffixNotAdjacent);
    const OracleVerdict v = execution_query(challenger.id, rc.length - 1 + k, *e.tx, prev->state, e.state);
    if (v == OracleVerdict::Timeout) return decide(Result::ResponderWins, Reason::ChallengerTimeout);
    if (v != OracleVerdict::Accepted) return decide(Result::ResponderWins, Reason::SuffixBadTransition);
    prev = &e;
  }
  if (expected == gap && !(suffix.entries.back() == cc.last_entry)) {
    return decide(Result::ResponderWins, Reason::SuffixInconsistent);
  }
  if (expected >= cap) return decide(Result::ChallengerWins, Reason::ResponderTooShort);
  return decide(Result::NestedMMRs, Reason::NestedMMRs);
}

bool Verifier::consensus_query(const Transaction* prev, const Transaction& next, std::span<const PartyId> suppliers) {
  const Message request = to_message(AdjacencyRequestMsg{prev ? std::optional<Transaction>(*prev) : std::nullopt, next});
  for (PartyId s : suppliers) {
    auto reply = net_.request(s, request);
    if (!reply || reply->kind != MessageKind::AdjacencyProof) {
      net_.note("oracle", s, kVerifierId, "consensus", reply ? "refused" : "timeout");
      continue;
    }
    if (oracles_->adjacency(prev, next, reply->payload)) return true;
    net_.note("oracle", s, kVerifierId, "consensus", "rejected");
  }
  return false;
}

OracleVerdict Verifier::execution_query(PartyId supplier, std::uint64_t pre_index, const Transaction& tx,
                                        const StateCommitment& pre, const StateCommitment& post) {
  auto reply = net_.request(supplier, to_message(WitnessRequestMsg{pre_index, tx, pre}));
  if (!reply) return OracleVerdict::Timeout;
  const OracleVerdict v = reply->kind == MessageKind::Witness ? oracles_->transition(pre, tx, post, reply->payload)
                                                              : OracleVerdict::Bottom;
  net_.note("oracle", supplier, kVerifierId, "execution", std::string(to_string(v)));
  return v;
}

std::optional<StateReplyMsg> Verifier::final_state_query(PartyId prover, const Claim& claim, Key key) {
  auto reply = net_.request(prover, to_message(StateQueryMsg{key}));
  if (!reply || reply->kind != MessageKind::StateReply) return std::nullopt;
  try {
    StateReplyMsg m = decode_state_reply(reply->payload);
    if (!verify_smt(m.proof, claim.state().digest, key, m.value, oracles_->smt_depth())) return std::nullopt;
    return m;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void Verifier::note_adjudication(const Outcome& out) {
  std::string detail = std::string(to_string(out.result)) + ":" + std::string(to_string(out.reason));
  if (out.pinpoint) detail += ":j=" + std::to_string(out.pinpoint->j);
  net_.note("adjudication", out.challenger, out.responder, "outcome", detail);
}

}  // namespace lazylight
