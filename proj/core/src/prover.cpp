#include "lazylight/prover.hpp"

#include "lazylight/consensus_oracle.hpp"
#include "lazylight/error.hpp"
#include "lazylight/execution.hpp"
#include "lazylight/games.hpp"

namespace lazylight {

Claim ProverData::honest_claim() const {
  Claim c;
  c.peaks = mmr.peaks();
  c.length = length();
  c.last_entry = entries->at(length() - 1);
  c.last_leaf_proof = mmr.prove(length() - 1);
  return c;
}

std::shared_ptr<const ProverData> make_prover_data(std::shared_ptr<const EntrySource> entries, unsigned arity,
                                                   std::shared_ptr<const SparseState> genesis,
                                                   std::optional<Mint> mint,
                                                   std::shared_ptr<const BlockStore> blocks) {
  auto data = std::make_shared<ProverData>(ProverData{
      entries, MountainRange::from_leaf_digests(leaf_digest_column(*entries), arity), std::move(genesis), mint,
      std::move(blocks)});
  return data;
}

Prover::Prover(std::string name, Behavior behavior, std::shared_ptr<const ProverData> data, std::uint64_t seed)
    : name_(std::move(name)), behavior_(behavior), data_(std::move(data)), rng_(seed) {}

std::uint64_t Prover::announced_size() const {
  return data_->length() + (std::holds_alternative<EquivocatingSizes>(behavior_) ? 1 : 0);
}

Claim Prover::claim() const {
  Claim c = data_->honest_claim();
  if (std::holds_alternative<WrongClaimProof>(behavior_)) c.last_leaf_proof.leaf_index += 1;
  return c;
}

SparseState Prover::state_at(std::uint64_t i) const {
  if (!data_->genesis) throw Error(ErrorCode::InvalidParams, "stub ledgers carry no state");
  if (i >= data_->length()) throw Error(ErrorCode::IndexOutOfRange, "state index out of range");
  std::uint64_t k = 0;
  SparseState st = *data_->genesis;
  if (state_cache_ && state_cache_->first <= i) {
    k = state_cache_->first;
    st = state_cache_->second;
  } else if (data_->mint && data_->mint->index == 0) {
    st.set(data_->mint->key, st.get(data_->mint->key).value_or(0) + data_->mint->amount);
  }
  for (std::uint64_t n = k + 1; n <= i; ++n) {
    const AugmentedEntry e = data_->entries->at(n);
    if (e.tx) apply(st, *e.tx);
    if (data_->mint && data_->mint->index == n) {
      st.set(data_->mint->key, st.get(data_->mint->key).value_or(0) + data_->mint->amount);
    }
  }
  state_cache_.emplace(i, st);
  return st;
}

bool Prover::stalls() {
  ++game_requests_;
  const auto* s = std::get_if<Staller>(&behavior_);
  return s != nullptr && game_requests_ >= s->depth;
}

std::optional<Message> Prover::handle(PartyId, const Message& msg) {
  try {
    switch (msg.kind) {
      case MessageKind::GetSize: return size_message(announced_size());
      case MessageKind::GetClaim: return claim_message(claim());
      case MessageKind::ChallengerStart:
        if (stalls()) return std::nullopt;
        return on_challenger_start(decode_challenger_start(msg.payload));
      case MessageKind::ChallengerTurn:
        if (stalls()) return std::nullopt;
        return on_challenger_turn(decode_challenger_turn(msg.payload));
      case MessageKind::OpenNode:
        if (stalls()) return std::nullopt;
        return on_open(decode_node_request(msg.payload));
      case MessageKind::RevealLeaf:
        if (stalls()) return std::nullopt;
        return on_reveal(decode_node_request(msg.payload));
      case MessageKind::AdjacencyRequest: return on_adjacency(decode_adjacency_request(msg.payload));
      case MessageKind::WitnessRequest: return on_witness(decode_witness_request(msg.payload));
      case MessageKind::StateQuery: return on_state_query(decode_state_query(msg.payload));
      default: return std::nullopt;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<Message> Prover::on_challenger_start(const ChallengerStartMsg& m) {
  if (std::holds_alternative<InvalidQueryChallenger>(behavior_)) {
    return to_message(QueryMsg{m.responder_peaks.roots.size()});
  }
  const MountainRange& mmr = data_->mmr;
  if (m.responder_length > mmr.size()) return std::nullopt;
  const ZoomAction action = peaks_vs_peaks(mmr, m.responder_peaks);
  if (const auto* target = std::get_if<BisectTarget>(&action)) {
    const auto loc = mmr.locate(target->offset);
    const MerkleTree& tree = mmr.trees()[loc.tree];
    MerkleTree reference = (loc.local == 0 && tree.leaf_count() == target->size)
                               ? tree
                               : MerkleTree::from_leaf_digests(tree.level(0).slice(loc.local, target->size), mmr.arity());
    const std::size_t height = reference.height();
    sessions_.insert_or_assign(m.game, ChallengerSession{std::move(reference), height, 0});
    return to_message(QueryMsg{target->responder_peak});
  }
  SuffixMsg suffix;
  const std::uint64_t end = std::min(mmr.size(), m.responder_length + m.cap);
  for (std::uint64_t i = m.responder_length; i < end; ++i) suffix.entries.push_back(data_->entries->at(i));
  return to_message(suffix);
}

std::optional<Message> Prover::on_challenger_turn(const ChallengerTurnMsg& m) {
  auto it = sessions_.find(m.game);
  if (it == sessions_.end() || it->second.level == 0) return std::nullopt;
  ChallengerSession& s = it->second;
  if (std::holds_alternative<InvalidQueryChallenger>(behavior_)) return to_message(QueryMsg{m.children.size()});
  const std::vector<Digest> own = s.reference.children(s.level, s.index);
  const std::uint32_t idx = challenger_next(own, m.children);
  s.index = s.index * s.reference.arity() + idx;
  --s.level;
  return to_message(QueryMsg{idx});
}

std::optional<Message> Prover::on_open(const NodeRequestMsg& m) {
  const auto& trees = data_->mmr.trees();
  if (m.peak >= trees.size()) return std::nullopt;
  std::vector<Digest> children = trees[m.peak].open_children(m.path);
  ++openings_;
  if (const auto* g = std::get_if<GarbageChildren>(&behavior_); g && openings_ == g->depth) {
    for (auto& d : children) {
      for (auto& b : d.bytes) b = static_cast<std::uint8_t>(rng_());
    }
  }
  return to_message(ChildrenMsg{std::move(children)});
}

std::optional<Message> Prover::on_reveal(const NodeRequestMsg& m) {
  const MountainRange& mmr = data_->mmr;
  if (m.peak >= mmr.trees().size()) return std::nullopt;
  const MerkleTree& tree = mmr.trees()[m.peak];
  if (m.path.size() != tree.height()) return std::nullopt;
  std::uint64_t local = 0;
  for (auto p : m.path) local = local * tree.arity() + p;
  if (local >= tree.leaf_count()) return std::nullopt;
  const std::uint64_t j = mmr.tree_offset(m.peak) + local;
  LeafRevealMsg reveal;
  reveal.entry = data_->entries->at(j);
  if (j > 0) {
    reveal.prev = data_->entries->at(j - 1);
    if (local > 0) {
      reveal.prev_proof = tree.prove(local - 1);
    } else {
      const MerkleTree& before = mmr.trees()[m.peak - 1];
      reveal.prev_proof = before.prove(before.leaf_count() - 1);
    }
  }
  return to_message(reveal);
}

std::optional<Message> Prover::on_adjacency(const AdjacencyRequestMsg& m) const {
  if (!data_->blocks) return Message{MessageKind::AdjacencyProof, {}};
  const std::uint64_t view = data_->length() - 1;
  auto proof = prove_adjacency(*data_->blocks, view, m.prev ? &*m.prev : nullptr, m.next);
  if (!proof) return Message{MessageKind::Refusal, {}};
  return Message{MessageKind::AdjacencyProof, encode(*proof)};
}

std::optional<Message> Prover::on_witness(const WitnessRequestMsg& m) const {
  if (!data_->genesis) return Message{MessageKind::Witness, {}};
  if (m.pre_index >= data_->length()) return Message{MessageKind::Refusal, {}};
  return Message{MessageKind::Witness, encode(make_witness(state_at(m.pre_index), m.tx))};
}

std::optional<Message> Prover::on_state_query(const StateQueryMsg& m) const {
  if (!data_->genesis) return Message{MessageKind::Refusal, {}};
  const SparseState st = state_at(data_->length() - 1);
  if (!st.in_range(m.key)) return Message{MessageKind::Refusal, {}};
  return to_message(StateReplyMsg{st.get(m.key), st.prove(m.key)});
}

}  // namespace lazylight
