#include "lazylight/mmr.hpp"

#include "lazylight/error.hpp"
#include "lazylight/hash.hpp"

namespace lazylight {

std::vector<std::uint64_t> segment_lengths(std::uint64_t total) {
  if (total == 0) throw Error(ErrorCode::InvalidLength, "an augmented ledger has at least one entry");
  std::vector<std::uint64_t> out;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t v = std::uint64_t{1} << bit;
    if (total & v) out.push_back(v);
  }
  return out;
}

std::uint64_t Peaks::total() const {
  std::uint64_t t = 0;
  for (auto s : sizes) t += s;
  return t;
}

bool Peaks::well_shaped() const {
  if (roots.size() != sizes.size() || sizes.empty()) return false;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!is_power_of_two(sizes[i])) return false;
    if (i > 0 && sizes[i] >= sizes[i - 1]) return false;
  }
  return true;
}

void encode_into(Encoder& enc, const Peaks& peaks) {
  enc.u64(peaks.roots.size());
  for (std::size_t i = 0; i < peaks.roots.size(); ++i) {
    enc.u64(i < peaks.sizes.size() ? peaks.sizes[i] : 0);
    enc.digest(peaks.roots[i]);
  }
}

Peaks decode_peaks(Decoder& dec) {
  Peaks peaks;
  const std::uint64_t n = dec.count(8 + kDigestSize);
  for (std::uint64_t i = 0; i < n; ++i) {
    peaks.sizes.push_back(dec.u64());
    peaks.roots.push_back(dec.digest());
  }
  return peaks;
}

Bytes encode(const Peaks& peaks) {
  Encoder enc;
  encode_into(enc, peaks);
  return enc.take();
}

Digest bag_peaks(const Peaks& peaks) { return hash_tagged(DomainTag::PeakBag, encode(peaks)); }

MountainRange MountainRange::build(std::span<const Bytes> leaves, unsigned arity) {
  DigestColumn column;
  for (const auto& leaf : leaves) column.push_back(leaf_digest(leaf));
  return from_leaf_digests(column, arity);
}

MountainRange MountainRange::from_leaf_digests(const DigestColumn& leaves, unsigned arity) {
  if (leaves.empty()) throw Error(ErrorCode::InvalidLength, "mountain range needs at least one leaf");
  if (arity < 2) throw Error(ErrorCode::InvalidParams, "arity must be at least 2");
  MountainRange out(arity);
  std::uint64_t offset = 0;
  for (std::uint64_t len : segment_lengths(leaves.size())) {
    out.trees_.push_back(MerkleTree::from_leaf_digests(leaves.slice(offset, len), arity));
    offset += len;
  }
  out.size_ = leaves.size();
  return out;
}

MountainRange MountainRange::append(ByteView leaf) const { return append_digest(leaf_digest(leaf)); }

MountainRange MountainRange::append_digest(const Digest& leaf) const {
  MountainRange out = *this;
  DigestColumn single;
  single.push_back(leaf);
  out.trees_.push_back(MerkleTree::from_leaf_digests(std::move(single), arity_));
  while (out.trees_.size() >= 2) {
    const auto n = out.trees_.size();
    if (out.trees_[n - 2].leaf_count() != out.trees_[n - 1].leaf_count()) break;
    MerkleTree merged = MerkleTree::merge(out.trees_[n - 2], out.trees_[n - 1]);
    out.trees_.pop_back();
    out.trees_.back() = std::move(merged);
  }
  ++out.size_;
  return out;
}

MountainRange MountainRange::with_leaf_digest(std::uint64_t i, const Digest& d) const {
  const Location loc = locate(i);
  MountainRange out = *this;
  out.trees_[loc.tree] = trees_[loc.tree].with_leaf_digest(loc.local, d);
  return out;
}

Peaks MountainRange::peaks() const {
  Peaks p;
  for (const auto& t : trees_) {
    p.roots.push_back(t.root());
    p.sizes.push_back(t.leaf_count());
  }
  return p;
}

std::uint64_t MountainRange::tree_offset(std::size_t t) const {
  if (t >= trees_.size()) throw Error(ErrorCode::IndexOutOfRange, "tree index out of range");
  std::uint64_t off = 0;
  for (std::size_t k = 0; k < t; ++k) off += trees_[k].leaf_count();
  return off;
}

MountainRange::Location MountainRange::locate(std::uint64_t leaf) const {
  if (leaf >= size_) throw Error(ErrorCode::IndexOutOfRange, "leaf index out of range");
  Location loc;
  for (std::size_t t = 0; t < trees_.size(); ++t) {
    const std::uint64_t n = trees_[t].leaf_count();
    if (leaf < loc.offset + n) {
      loc.tree = t;
      loc.local = leaf - loc.offset;
      return loc;
    }
    loc.offset += n;
  }
  throw Error(ErrorCode::IndexOutOfRange, "leaf index out of range");
}

const Digest& MountainRange::leaf(std::uint64_t i) const {
  const Location loc = locate(i);
  return trees_[loc.tree].node(0, loc.local);
}

InclusionProof MountainRange::prove(std::uint64_t i) const {
  const Location loc = locate(i);
  return trees_[loc.tree].prove(loc.local);
}

}  // namespace lazylight
