#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lazylight/codec.hpp"
#include "lazylight/transaction.hpp"

namespace lazylight {

inline constexpr unsigned kDefaultSmtDepth = 32;

/// Authentication path for one key; siblings are ordered leaf level first.
struct SmtProof {
  Key key = 0;
  std::vector<Digest> siblings;

  bool operator==(const SmtProof&) const = default;
};

void encode_into(Encoder& enc, const SmtProof& proof);
SmtProof decode_smt_proof(Decoder& dec);

Digest smt_leaf_digest(Key key, std::optional<Amount> value);
/// Digest of an empty subtree whose leaves are `level` levels below it.
const Digest& smt_default_digest(unsigned level);
bool verify_smt(const SmtProof& proof, const Digest& root, Key key, std::optional<Amount> value, unsigned depth);

/// Fixed-depth sparse Merkle tree over 64-bit keys restricted to `depth` bits.
class SparseState {
 public:
  explicit SparseState(unsigned depth = kDefaultSmtDepth);

  unsigned depth() const { return depth_; }
  bool in_range(Key key) const { return depth_ >= 64 || (key >> depth_) == 0; }
  std::optional<Amount> get(Key key) const;
  void set(Key key, std::optional<Amount> value);
  const Digest& root() const { return root_; }
  /// Root computed from the leaf map alone, ignoring the node cache.
  Digest recompute_root() const;
  SmtProof prove(Key key) const;
  const std::map<Key, Amount>& leaves() const { return leaves_; }

  bool operator==(const SparseState& other) const { return depth_ == other.depth_ && leaves_ == other.leaves_; }

 private:
  struct NodeId {
    unsigned level;
    Key prefix;
    bool operator==(const NodeId&) const = default;
  };
  struct NodeIdHash {
    std::size_t operator()(const NodeId& n) const noexcept {
      return std::hash<Key>()(n.prefix * 0x9e3779b97f4a7c15ULL + n.level);
    }
  };

  const Digest& node(unsigned level, Key prefix) const;

  unsigned depth_;
  std::map<Key, Amount> leaves_;
  std::unordered_map<NodeId, Digest, NodeIdHash> nodes_;
  Digest root_;
};

}  // namespace lazylight
