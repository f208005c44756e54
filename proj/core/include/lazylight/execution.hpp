#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lazylight/codec.hpp"
#include "lazylight/smt.hpp"
#include "lazylight/transaction.hpp"

namespace lazylight {

/// Upper bound on |inputs| + |outputs| for a spend to be valid.
inline constexpr std::size_t kMaxUtxoTouched = 16;

struct StateCommitment {
  Digest digest;

  auto operator<=>(const StateCommitment&) const = default;
};

struct Genesis {
  unsigned depth = kDefaultSmtDepth;
  std::vector<std::pair<Key, Amount>> allocations;
};

/// Parses "key_hex,amount" lines; blank lines and '#' comments are skipped.
std::vector<std::pair<Key, Amount>> parse_allocations(std::string_view text);

SparseState genesis_state(const Genesis& genesis);
StateCommitment commit(const SparseState& st);

bool is_valid(const SparseState& st, const Transaction& tx);
SparseState delta(const SparseState& st, const Transaction& tx);
/// In-place delta; returns whether the transaction applied.
bool apply(SparseState& st, const Transaction& tx);
SparseState delta_star(const SparseState& st0, std::span<const Transaction> txs);

struct TouchedLeaf {
  Key key = 0;
  std::optional<Amount> before;
  SmtProof proof;

  bool operator==(const TouchedLeaf&) const = default;
};

struct ExecutionWitness {
  std::vector<TouchedLeaf> touched;

  bool operator==(const ExecutionWitness&) const = default;
};

Bytes encode(const ExecutionWitness& w);
ExecutionWitness decode_witness(ByteView bytes);

ExecutionWitness make_witness(const SparseState& st, const Transaction& tx);
/// Post-state commitment from a witness, or nullopt when the witness is unusable.
std::optional<StateCommitment> succinct_delta(const StateCommitment& pre, const Transaction& tx,
                                              const ExecutionWitness& w, unsigned depth);

enum class OracleVerdict { Accepted, Mismatch, Bottom, Timeout };

std::string_view to_string(OracleVerdict v) noexcept;

/// Execution oracle: `fetch` asks the prover for an encoded witness and
/// returns nullopt when the prover does not answer.
OracleVerdict exec_oracle_query(const Transaction& tx, const StateCommitment& pre, const StateCommitment& post_claim,
                                unsigned depth, const std::function<std::optional<Bytes>()>& fetch);

}  // namespace lazylight
