#include "lazylight/merkle.hpp"

#include "lazylight/error.hpp"
#include "lazylight/hash.hpp"

namespace lazylight {

namespace {

void check_arity(unsigned arity) {
  if (arity < 2) throw Error(ErrorCode::InvalidParams, "arity must be at least 2");
}

// Hashes column[offset, offset + count) as one group without allocating per call.
Digest hash_group(const DigestColumn& column, std::uint64_t offset, std::uint64_t count) {
  thread_local Bytes buf;
  buf.resize(8 + count * kDigestSize);
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(count >> (56 - 8 * i));
  std::uint8_t* out = buf.data() + 8;
  for (std::uint64_t k = 0; k < count; ++k, out += kDigestSize) {
    const Digest& d = column[offset + k];
    std::copy(d.bytes.begin(), d.bytes.end(), out);
  }
  return hash_tagged(DomainTag::Inner, buf);
}

}  // namespace

void encode_into(Encoder& enc, const InclusionProof& proof) {
  enc.u64(proof.leaf_index);
  enc.u64(proof.path.size());
  for (const auto& step : proof.path) {
    enc.varint(step.position);
    enc.digests(step.siblings);
  }
}

InclusionProof decode_inclusion_proof(Decoder& dec) {
  InclusionProof proof;
  proof.leaf_index = dec.u64();
  const std::uint64_t steps = dec.count(9);
  proof.path.reserve(steps);
  for (std::uint64_t s = 0; s < steps; ++s) {
    ProofStep step;
    const std::uint64_t pos = dec.varint();
    if (pos > 0xffffffffULL) throw Error(ErrorCode::DecodeError, "proof position too large");
    step.position = static_cast<std::uint32_t>(pos);
    step.siblings = dec.digests();
    proof.path.push_back(std::move(step));
  }
  return proof;
}

Digest leaf_digest(ByteView leaf) { return hash_tagged(DomainTag::Leaf, encode(leaf)); }

Digest inner_digest(std::span<const Digest> children) { return hash_tagged(DomainTag::Inner, encode(children)); }

bool is_power_of_two(std::uint64_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::vector<std::uint64_t> level_sizes(std::uint64_t leaf_count, unsigned arity) {
  check_arity(arity);
  std::vector<std::uint64_t> sizes{leaf_count};
  while (sizes.back() > 1) sizes.push_back((sizes.back() + arity - 1) / arity);
  return sizes;
}

std::size_t tree_height(std::uint64_t leaf_count, unsigned arity) { return level_sizes(leaf_count, arity).size() - 1; }

std::uint64_t child_count(std::uint64_t leaf_count, unsigned arity, std::size_t level, std::uint64_t index) {
  const auto sizes = level_sizes(leaf_count, arity);
  if (level == 0 || level >= sizes.size() || index >= sizes[level]) {
    throw Error(ErrorCode::NotInnerNode, "no such inner node");
  }
  const std::uint64_t lower = sizes[level - 1];
  const std::uint64_t first = index * arity;
  return std::min<std::uint64_t>(arity, lower - first);
}

DigestColumn build_level(const DigestColumn& lower, unsigned arity) {
  DigestColumn upper;
  for (std::uint64_t off = 0; off < lower.size(); off += arity) {
    upper.push_back(hash_group(lower, off, std::min<std::uint64_t>(arity, lower.size() - off)));
  }
  return upper;
}

MerkleTree MerkleTree::from_leaves(std::span<const Bytes> leaves, unsigned arity) {
  if (!is_power_of_two(leaves.size())) throw Error(ErrorCode::NotPowerOfTwo, "leaf count must be a power of two");
  DigestColumn column;
  for (const auto& leaf : leaves) column.push_back(leaf_digest(leaf));
  return from_leaf_digests(std::move(column), arity);
}

MerkleTree MerkleTree::from_leaf_digests(DigestColumn leaves, unsigned arity) {
  check_arity(arity);
  if (!is_power_of_two(leaves.size())) throw Error(ErrorCode::NotPowerOfTwo, "leaf count must be a power of two");
  std::vector<DigestColumn> levels;
  levels.push_back(std::move(leaves));
  while (levels.back().size() > 1) levels.push_back(build_level(levels.back(), arity));
  return MerkleTree(arity, std::move(levels));
}

MerkleTree MerkleTree::merge(const MerkleTree& left, const MerkleTree& right) {
  if (left.arity_ != right.arity_ || left.leaf_count() != right.leaf_count()) {
    throw Error(ErrorCode::InvalidParams, "merge needs equal-size trees of the same arity");
  }
  const unsigned m = left.arity_;
  std::vector<DigestColumn> levels;
  DigestColumn base = left.levels_[0];
  base.append(right.levels_[0]);
  levels.push_back(std::move(base));
  bool aligned = true;
  for (std::size_t k = 0; levels.back().size() > 1; ++k) {
    // When the left half fills whole groups, the next level is the two halves' next levels side by side.
    if (aligned && k + 1 < left.levels_.size() && left.levels_[k].size() % m == 0) {
      DigestColumn next = left.levels_[k + 1];
      next.append(right.levels_[k + 1]);
      levels.push_back(std::move(next));
    } else {
      aligned = false;
      levels.push_back(build_level(levels.back(), m));
    }
  }
  return MerkleTree(m, std::move(levels));
}

std::vector<Digest> MerkleTree::children(std::size_t level, std::uint64_t index) const {
  if (level == 0 || level >= levels_.size() || index >= levels_[level].size()) {
    throw Error(ErrorCode::NotInnerNode, "no such inner node");
  }
  const DigestColumn& lower = levels_[level - 1];
  const std::uint64_t first = index * arity_;
  return lower.copy_range(first, std::min<std::uint64_t>(arity_, lower.size() - first));
}

std::vector<Digest> MerkleTree::open_children(std::span<const std::uint32_t> path) const {
  std::size_t level = height();
  std::uint64_t index = 0;
  for (std::uint32_t p : path) {
    if (level == 0) throw Error(ErrorCode::NotInnerNode, "path descends below the leaves");
    const std::uint64_t first = index * arity_;
    if (first + p >= levels_[level - 1].size() || p >= arity_) throw Error(ErrorCode::NotInnerNode, "path exits the tree");
    index = first + p;
    --level;
  }
  if (level == 0) throw Error(ErrorCode::NotInnerNode, "path addresses a leaf");
  return children(level, index);
}

InclusionProof MerkleTree::prove(std::uint64_t i) const {
  if (i >= leaf_count()) throw Error(ErrorCode::IndexOutOfRange, "leaf index out of range");
  InclusionProof proof;
  proof.leaf_index = i;
  std::uint64_t idx = i;
  for (std::size_t level = 0; level + 1 < levels_.size(); ++level) {
    const DigestColumn& col = levels_[level];
    const std::uint64_t first = (idx / arity_) * arity_;
    const std::uint64_t count = std::min<std::uint64_t>(arity_, col.size() - first);
    ProofStep step;
    step.position = static_cast<std::uint32_t>(idx - first);
    for (std::uint64_t k = 0; k < count; ++k) {
      if (first + k != idx) step.siblings.push_back(col[first + k]);
    }
    proof.path.push_back(std::move(step));
    idx /= arity_;
  }
  return proof;
}

MerkleTree MerkleTree::with_leaf_digest(std::uint64_t i, const Digest& d) const {
  if (i >= leaf_count()) throw Error(ErrorCode::IndexOutOfRange, "leaf index out of range");
  MerkleTree out = *this;
  out.levels_[0].set(i, d);
  std::uint64_t idx = i;
  for (std::size_t level = 1; level < out.levels_.size(); ++level) {
    const std::uint64_t parent = idx / arity_;
    const DigestColumn& lower = out.levels_[level - 1];
    const std::uint64_t first = parent * arity_;
    out.levels_[level].set(parent, hash_group(lower, first, std::min<std::uint64_t>(arity_, lower.size() - first)));
    idx = parent;
  }
  return out;
}

Digest subrange_root(const MerkleTree& tree, std::uint64_t offset, std::uint64_t count) {
  if (!is_power_of_two(count)) throw Error(ErrorCode::NotPowerOfTwo, "subrange size must be a power of two");
  if (offset > tree.leaf_count() || count > tree.leaf_count() - offset) {
    throw Error(ErrorCode::IndexOutOfRange, "subrange exceeds tree");
  }
  const unsigned m = tree.arity();
  DigestColumn current = tree.level(0).slice(offset, count);
  std::size_t level = 0;
  bool aligned = true;
  while (current.size() > 1) {
    // Whole groups of the tree, or a range ending where the tree level ends, have stored parents.
    const bool ends_with_level = offset + current.size() == tree.level_size(level);
    if (aligned && offset % m == 0 && (current.size() % m == 0 || ends_with_level) && level + 1 <= tree.height()) {
      const std::uint64_t parent_count = (current.size() + m - 1) / m;
      current = tree.level(level + 1).slice(offset / m, parent_count);
      offset /= m;
    } else {
      aligned = false;
      current = build_level(current, m);
    }
    ++level;
  }
  return current[0];
}

bool verify_inclusion_digest(const InclusionProof& proof, const Digest& root, std::uint64_t i, const Digest& leaf,
                             unsigned arity) {
  if (arity < 2 || proof.leaf_index != i) return false;
  Digest current = leaf;
  std::uint64_t idx = i;
  std::vector<Digest> group;
  for (const auto& step : proof.path) {
    const std::size_t size = step.siblings.size() + 1;
    if (size > arity || step.position >= size || step.position != idx % arity) return false;
    group.clear();
    group.insert(group.end(), step.siblings.begin(), step.siblings.begin() + step.position);
    group.push_back(current);
    group.insert(group.end(), step.siblings.begin() + step.position, step.siblings.end());
    current = inner_digest(group);
    idx /= arity;
  }
  return idx == 0 && current == root;
}

bool verify_inclusion(const InclusionProof& proof, const Digest& root, std::uint64_t i, ByteView value,
                      unsigned arity) {
  return verify_inclusion_digest(proof, root, i, leaf_digest(value), arity);
}

}  // namespace lazylight
