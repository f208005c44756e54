#include "lazylight/consensus_oracle.hpp"

#include "lazylight/error.hpp"

namespace lazylight {

namespace {

void encode_position(Encoder& enc, const TxPosition& pos) { enc.u64(pos.block).u64(pos.index); }

TxPosition decode_position(Decoder& dec) {
  TxPosition pos;
  pos.block = dec.u64();
  pos.index = dec.u64();
  return pos;
}

bool included(const HeaderChain& chain, const TxPosition& pos, const InclusionProof& proof, const Transaction& tx) {
  if (pos.block >= chain.headers.size()) return false;
  const Header& h = chain.headers[pos.block];
  if (pos.index >= h.tx_count) return false;
  return verify_inclusion(proof, h.tx_root, pos.index, block_leaf(tx), kBlockTreeArity);
}

}  // namespace

Bytes encode(const AdjacencyProof& proof) {
  Encoder enc;
  enc.u8(proof.prev ? 1 : 0);
  if (proof.prev) {
    encode_position(enc, *proof.prev);
    encode_into(enc, proof.prev_proof);
  }
  encode_position(enc, proof.next);
  encode_into(enc, proof.next_proof);
  return enc.take();
}

AdjacencyProof decode_adjacency_proof(ByteView bytes) {
  Decoder dec(bytes);
  AdjacencyProof proof;
  const std::uint8_t has_prev = dec.u8();
  if (has_prev > 1) throw Error(ErrorCode::DecodeError, "bad adjacency flag");
  if (has_prev) {
    proof.prev = decode_position(dec);
    proof.prev_proof = decode_inclusion_proof(dec);
  }
  proof.next = decode_position(dec);
  proof.next_proof = decode_inclusion_proof(dec);
  dec.expect_done();
  return proof;
}

std::optional<AdjacencyProof> prove_adjacency(const BlockStore& store, std::uint64_t view_len, const Transaction* prev,
                                              const Transaction& next) {
  auto next_pos = store.position_of(next);
  if (!next_pos || store.ledger_index(*next_pos) >= view_len) return std::nullopt;
  AdjacencyProof proof;
  proof.next = *next_pos;
  proof.next_proof = store.prove(*next_pos);
  if (prev == nullptr) {
    if (store.ledger_index(*next_pos) != 0) return std::nullopt;
    return proof;
  }
  auto prev_pos = store.position_of(*prev);
  if (!prev_pos || store.ledger_index(*prev_pos) + 1 != store.ledger_index(*next_pos)) return std::nullopt;
  proof.prev = *prev_pos;
  proof.prev_proof = store.prove(*prev_pos);
  return proof;
}

bool verify_adjacency(const HeaderChain& chain, const Transaction* prev, const Transaction& next,
                      const AdjacencyProof& proof) {
  if (!included(chain, proof.next, proof.next_proof, next)) return false;
  if (prev == nullptr) return !proof.prev && proof.next.block == 0 && proof.next.index == 0;
  if (!proof.prev || !included(chain, *proof.prev, proof.prev_proof, *prev)) return false;
  const TxPosition& a = *proof.prev;
  const TxPosition& b = proof.next;
  if (a.block == b.block) return b.index == a.index + 1;
  return b.block == a.block + 1 && a.index + 1 == chain.headers[a.block].tx_count && b.index == 0;
}

bool co_query(const HeaderChain& chain, const Transaction* prev, const Transaction& next,
              std::span<const ProofSupplier> suppliers) {
  for (const auto& supply : suppliers) {
    std::optional<Bytes> reply = supply();
    if (!reply) continue;
    try {
      if (verify_adjacency(chain, prev, next, decode_adjacency_proof(*reply))) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

}  // namespace lazylight
