#include "lazylight/oracle_backend.hpp"

#include "lazylight/consensus_oracle.hpp"
#include "lazylight/error.hpp"

namespace lazylight {

bool ChainBackend::adjacency(const Transaction* prev, const Transaction& next, ByteView proof) const {
  try {
    return verify_adjacency(chain_, prev, next, decode_adjacency_proof(proof));
  } catch (const Error&) {
    return false;
  }
}

OracleVerdict ChainBackend::transition(const StateCommitment& pre, const Transaction& tx, const StateCommitment& post,
                                       ByteView witness) const {
  Bytes copy(witness.begin(), witness.end());
  return exec_oracle_query(tx, pre, post, depth_, [&copy]() -> std::optional<Bytes> { return copy; });
}

std::optional<std::uint64_t> StubBackend::position(const Transaction& tx) const {
  if (!tx.is_transfer()) return std::nullopt;
  const std::uint64_t k = tx.transfer().nonce;
  if (k == 0 || k >= canonical_->size()) return std::nullopt;
  if (!(canonical_->at(k).tx == std::optional<Transaction>(tx))) return std::nullopt;
  return k;
}

bool StubBackend::adjacency(const Transaction* prev, const Transaction& next, ByteView) const {
  auto k = position(next);
  if (!k) return false;
  if (prev == nullptr) return *k == 1;
  auto p = position(*prev);
  return p && *p + 1 == *k;
}

OracleVerdict StubBackend::transition(const StateCommitment& pre, const Transaction& tx, const StateCommitment& post,
                                      ByteView) const {
  auto k = position(tx);
  if (!k) return OracleVerdict::Bottom;
  if (canonical_->at(*k - 1).state != pre) return OracleVerdict::Bottom;
  return canonical_->at(*k).state == post ? OracleVerdict::Accepted : OracleVerdict::Mismatch;
}

}  // namespace lazylight
