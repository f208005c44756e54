#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lazylight/codec.hpp"
#include "lazylight/execution.hpp"
#include "lazylight/smt.hpp"
#include "lazylight/transaction.hpp"

namespace lazylight {

using DirtyLedger = std::vector<Transaction>;

/// One (transaction, post-state commitment) pair; the genesis entry has no transaction.
struct AugmentedEntry {
  std::optional<Transaction> tx;
  StateCommitment state;

  bool operator==(const AugmentedEntry&) const = default;
};

void encode_into(Encoder& enc, const AugmentedEntry& entry);
AugmentedEntry decode_entry(Decoder& dec);
Bytes encode(const AugmentedEntry& entry);
Digest entry_leaf_digest(const AugmentedEntry& entry);

/// Pairwise distinct at the byte level.
bool has_unique_transactions(std::span<const Transaction> ledger);

std::vector<AugmentedEntry> augment(std::span<const Transaction> ledger, const SparseState& st0);
bool is_well_formed(std::span<const AugmentedEntry> entries, std::span<const Transaction> ledger,
                    const SparseState& st0);

}  // namespace lazylight
