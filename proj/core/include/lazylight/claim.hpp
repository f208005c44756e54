#pragma once

#include <cstdint>

#include "lazylight/codec.hpp"
#include "lazylight/execution.hpp"
#include "lazylight/ledger.hpp"
#include "lazylight/merkle.hpp"
#include "lazylight/mmr.hpp"

namespace lazylight {

/// A prover's commitment: its peaks and length, plus the last entry opened
/// against the last peak so the claimed state commitment is bound to it.
struct Claim {
  Peaks peaks;
  std::uint64_t length = 0;
  AugmentedEntry last_entry;
  InclusionProof last_leaf_proof;

  bool operator==(const Claim&) const = default;
  const StateCommitment& state() const { return last_entry.state; }
  /// Two claims commit to the same ledger.
  bool same_commitment(const Claim& other) const { return length == other.length && peaks == other.peaks; }
};

void encode_into(Encoder& enc, const Claim& claim);
Claim decode_claim(Decoder& dec);
Bytes encode(const Claim& claim);

/// Shape checks made before any game: sizes follow the length's binary
/// digits and the last entry opens against the last peak.
bool claim_well_formed(const Claim& claim, unsigned arity);

}  // namespace lazylight
