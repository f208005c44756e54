#include "lazylight/ledger.hpp"

#include <set>

#include "lazylight/error.hpp"
#include "lazylight/merkle.hpp"

namespace lazylight {

void encode_into(Encoder& enc, const AugmentedEntry& entry) {
  enc.u8(entry.tx ? 1 : 0);
  if (entry.tx) encode_into(enc, *entry.tx);
  enc.digest(entry.state.digest);
}

AugmentedEntry decode_entry(Decoder& dec) {
  AugmentedEntry entry;
  const std::uint8_t has_tx = dec.u8();
  if (has_tx > 1) throw Error(ErrorCode::DecodeError, "bad entry flag");
  if (has_tx) entry.tx = decode_transaction(dec);
  entry.state.digest = dec.digest();
  return entry;
}

Bytes encode(const AugmentedEntry& entry) {
  Encoder enc;
  encode_into(enc, entry);
  return enc.take();
}

Digest entry_leaf_digest(const AugmentedEntry& entry) { return leaf_digest(encode(entry)); }

bool has_unique_transactions(std::span<const Transaction> ledger) {
  std::set<Bytes> seen;
  for (const auto& tx : ledger) {
    if (!seen.insert(encode(tx)).second) return false;
  }
  return true;
}

std::vector<AugmentedEntry> augment(std::span<const Transaction> ledger, const SparseState& st0) {
  std::vector<AugmentedEntry> out;
  out.reserve(ledger.size() + 1);
  out.push_back(AugmentedEntry{std::nullopt, commit(st0)});
  SparseState st = st0;
  for (const auto& tx : ledger) {
    apply(st, tx);
    out.push_back(AugmentedEntry{tx, commit(st)});
  }
  return out;
}

bool is_well_formed(std::span<const AugmentedEntry> entries, std::span<const Transaction> ledger,
                    const SparseState& st0) {
  if (entries.size() != ledger.size() + 1) return false;
  if (entries[0].tx || entries[0].state != commit(st0)) return false;
  SparseState st = st0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    // With unique transactions, adjacency in the ledger pins entry i to L[i-1].
    if (!entries[i].tx || !(*entries[i].tx == ledger[i - 1])) return false;
    apply(st, ledger[i - 1]);
    if (entries[i].state != commit(st)) return false;
  }
  return true;
}

}  // namespace lazylight
