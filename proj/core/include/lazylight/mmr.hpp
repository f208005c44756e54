#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lazylight/codec.hpp"
#include "lazylight/merkle.hpp"

namespace lazylight {

/// Strictly decreasing powers of two summing to `total` (its set bits).
std::vector<std::uint64_t> segment_lengths(std::uint64_t total);

struct Peaks {
  std::vector<Digest> roots;
  std::vector<std::uint64_t> sizes;

  bool operator==(const Peaks&) const = default;
  std::uint64_t total() const;
  /// Sizes strictly decreasing powers of two and one root per size.
  bool well_shaped() const;
};

void encode_into(Encoder& enc, const Peaks& peaks);
Peaks decode_peaks(Decoder& dec);
Bytes encode(const Peaks& peaks);
/// Single digest over all peaks, for external commitment.
Digest bag_peaks(const Peaks& peaks);

/// Sequence of Merkle trees over consecutive power-of-two segments.
class MountainRange {
 public:
  struct Location {
    std::size_t tree = 0;
    std::uint64_t offset = 0;  // first global leaf of the tree
    std::uint64_t local = 0;   // leaf index within the tree
  };

  static MountainRange build(std::span<const Bytes> leaves, unsigned arity);
  static MountainRange from_leaf_digests(const DigestColumn& leaves, unsigned arity);

  MountainRange append(ByteView leaf) const;
  MountainRange append_digest(const Digest& leaf) const;
  MountainRange with_leaf_digest(std::uint64_t i, const Digest& d) const;

  unsigned arity() const { return arity_; }
  std::uint64_t size() const { return size_; }
  const std::vector<MerkleTree>& trees() const { return trees_; }
  Peaks peaks() const;
  std::uint64_t tree_offset(std::size_t t) const;
  Location locate(std::uint64_t leaf) const;
  const Digest& leaf(std::uint64_t i) const;
  /// Proof of leaf i within the tree holding it.
  InclusionProof prove(std::uint64_t i) const;

 private:
  explicit MountainRange(unsigned arity) : arity_(arity) {}

  unsigned arity_ = 2;
  std::uint64_t size_ = 0;
  std::vector<MerkleTree> trees_;
};

}  // namespace lazylight
