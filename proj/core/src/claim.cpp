#include "lazylight/claim.hpp"

#include "lazylight/error.hpp"

namespace lazylight {

void encode_into(Encoder& enc, const Claim& claim) {
  encode_into(enc, claim.peaks);
  enc.u64(claim.length);
  encode_into(enc, claim.last_entry);
  encode_into(enc, claim.last_leaf_proof);
}

Claim decode_claim(Decoder& dec) {
  Claim claim;
  claim.peaks = decode_peaks(dec);
  claim.length = dec.u64();
  claim.last_entry = decode_entry(dec);
  claim.last_leaf_proof = decode_inclusion_proof(dec);
  return claim;
}

Bytes encode(const Claim& claim) {
  Encoder enc;
  encode_into(enc, claim);
  return enc.take();
}

bool claim_well_formed(const Claim& claim, unsigned arity) {
  if (claim.length == 0 || !claim.peaks.well_shaped()) return false;
  if (claim.peaks.sizes != segment_lengths(claim.length)) return false;
  const std::uint64_t last_size = claim.peaks.sizes.back();
  return verify_inclusion(claim.last_leaf_proof, claim.peaks.roots.back(), last_size - 1, encode(claim.last_entry),
                          arity);
}

}  // namespace lazylight
