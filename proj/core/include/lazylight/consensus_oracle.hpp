#pragma once

#include <functional>
#include <optional>
#include <span>

#include "lazylight/blocks.hpp"
#include "lazylight/codec.hpp"
#include "lazylight/merkle.hpp"
#include "lazylight/transaction.hpp"

namespace lazylight {

/// Inclusion of two transactions at adjacent ledger positions. `prev` is
/// absent when the predecessor is the genesis entry, which pins `next` to the
/// first slot of block 0.
struct AdjacencyProof {
  std::optional<TxPosition> prev;
  InclusionProof prev_proof;
  TxPosition next;
  InclusionProof next_proof;
};

Bytes encode(const AdjacencyProof& proof);
AdjacencyProof decode_adjacency_proof(ByteView bytes);

/// Proof that `next` follows `prev` (nullptr for genesis) within the first
/// `view_len` transactions of the store, or nullopt to refuse.
std::optional<AdjacencyProof> prove_adjacency(const BlockStore& store, std::uint64_t view_len, const Transaction* prev,
                                              const Transaction& next);
bool verify_adjacency(const HeaderChain& chain, const Transaction* prev, const Transaction& next,
                      const AdjacencyProof& proof);

/// Returns nullopt when the prover times out or refuses.
using ProofSupplier = std::function<std::optional<Bytes>()>;

/// True iff some supplier returns an accepted proof; suppliers are asked in order.
bool co_query(const HeaderChain& chain, const Transaction* prev, const Transaction& next,
              std::span<const ProofSupplier> suppliers);

}  // namespace lazylight
