#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lazylight/codec.hpp"
#include "lazylight/digest_column.hpp"

namespace lazylight {

struct ProofStep {
  std::vector<Digest> siblings;  // the rest of the group, in order, without the node itself
  std::uint32_t position = 0;    // the node's position inside its group

  bool operator==(const ProofStep&) const = default;
};

struct InclusionProof {
  std::uint64_t leaf_index = 0;
  std::vector<ProofStep> path;  // leaf level first

  bool operator==(const InclusionProof&) const = default;
};

void encode_into(Encoder& enc, const InclusionProof& proof);
InclusionProof decode_inclusion_proof(Decoder& dec);

Digest leaf_digest(ByteView leaf);
Digest inner_digest(std::span<const Digest> children);

bool is_power_of_two(std::uint64_t n) noexcept;
/// Number of grouping levels above the leaves for `leaf_count` leaves.
std::size_t tree_height(std::uint64_t leaf_count, unsigned arity);
/// Node count per level, leaves first, root last.
std::vector<std::uint64_t> level_sizes(std::uint64_t leaf_count, unsigned arity);
/// Number of children of node `index` at `level` (level >= 1).
std::uint64_t child_count(std::uint64_t leaf_count, unsigned arity, std::size_t level, std::uint64_t index);

/// m-ary Merkle tree over a power-of-two number of leaves. Each level groups
/// the level below left to right in blocks of at most m.
class MerkleTree {
 public:
  static MerkleTree from_leaves(std::span<const Bytes> leaves, unsigned arity);
  static MerkleTree from_leaf_digests(DigestColumn leaves, unsigned arity);
  /// Tree over the concatenation of two equal-size trees; reuses aligned levels.
  static MerkleTree merge(const MerkleTree& left, const MerkleTree& right);

  unsigned arity() const { return arity_; }
  std::uint64_t leaf_count() const { return levels_.front().size(); }
  std::size_t height() const { return levels_.size() - 1; }
  const Digest& root() const { return levels_.back()[0]; }
  std::uint64_t level_size(std::size_t level) const { return levels_.at(level).size(); }
  const Digest& node(std::size_t level, std::uint64_t index) const { return levels_.at(level)[index]; }
  const DigestColumn& level(std::size_t level) const { return levels_.at(level); }

  std::vector<Digest> children(std::size_t level, std::uint64_t index) const;
  /// Children of the inner node reached from the root by `path`.
  std::vector<Digest> open_children(std::span<const std::uint32_t> path) const;
  InclusionProof prove(std::uint64_t i) const;
  MerkleTree with_leaf_digest(std::uint64_t i, const Digest& d) const;

 private:
  MerkleTree(unsigned arity, std::vector<DigestColumn> levels) : arity_(arity), levels_(std::move(levels)) {}

  unsigned arity_ = 2;
  std::vector<DigestColumn> levels_;
};

/// Digests of the next level up.
DigestColumn build_level(const DigestColumn& lower, unsigned arity);

/// Root of the tree that `from_leaf_digests` would build over
/// leaves [offset, offset + count) of `tree`; count must be a power of two.
Digest subrange_root(const MerkleTree& tree, std::uint64_t offset, std::uint64_t count);

bool verify_inclusion(const InclusionProof& proof, const Digest& root, std::uint64_t i, ByteView value, unsigned arity);
bool verify_inclusion_digest(const InclusionProof& proof, const Digest& root, std::uint64_t i, const Digest& leaf,
                             unsigned arity);

}  // namespace lazylight
