#include "lazylight/smt.hpp"

#include <array>

#include "lazylight/error.hpp"
#include "lazylight/hash.hpp"
#include "lazylight/merkle.hpp"

namespace lazylight {

namespace {

Digest pair_digest(const Digest& left, const Digest& right) {
  const std::array<Digest, 2> children{left, right};
  return inner_digest(children);
}

const std::array<Digest, 65>& default_digests() {
  static const std::array<Digest, 65> table = [] {
    std::array<Digest, 65> t;
    t[0] = smt_leaf_digest(0, std::nullopt);
    for (unsigned level = 1; level <= 64; ++level) t[level] = pair_digest(t[level - 1], t[level - 1]);
    return t;
  }();
  return table;
}

Key prefix_of(Key key, unsigned level) { return level >= 64 ? 0 : key >> level; }

}  // namespace

void encode_into(Encoder& enc, const SmtProof& proof) {
  enc.u64(proof.key);
  enc.digests(proof.siblings);
}

SmtProof decode_smt_proof(Decoder& dec) {
  SmtProof proof;
  proof.key = dec.u64();
  proof.siblings = dec.digests();
  return proof;
}

Digest smt_leaf_digest(Key key, std::optional<Amount> value) {
  if (!value) return hash_tagged(DomainTag::StateLeaf, {});
  return hash_tagged(DomainTag::StateLeaf, Encoder().u64(key).u64(*value).buffer());
}

const Digest& smt_default_digest(unsigned level) { return default_digests().at(level); }

bool verify_smt(const SmtProof& proof, const Digest& root, Key key, std::optional<Amount> value, unsigned depth) {
  if (depth == 0 || depth > 64 || proof.key != key || proof.siblings.size() != depth) return false;
  if (depth < 64 && (key >> depth) != 0) return false;
  Digest current = smt_leaf_digest(key, value);
  for (unsigned level = 0; level < depth; ++level) {
    const bool right = (key >> level) & 1;
    current = right ? pair_digest(proof.siblings[level], current) : pair_digest(current, proof.siblings[level]);
  }
  return current == root;
}

SparseState::SparseState(unsigned depth) : depth_(depth) {
  if (depth == 0 || depth > 64) throw Error(ErrorCode::InvalidParams, "state depth must be in [1, 64]");
  root_ = smt_default_digest(depth);
}

std::optional<Amount> SparseState::get(Key key) const {
  auto it = leaves_.find(key);
  if (it == leaves_.end()) return std::nullopt;
  return it->second;
}

const Digest& SparseState::node(unsigned level, Key prefix) const {
  auto it = nodes_.find(NodeId{level, prefix});
  return it == nodes_.end() ? smt_default_digest(level) : it->second;
}

void SparseState::set(Key key, std::optional<Amount> value) {
  if (!in_range(key)) throw Error(ErrorCode::IndexOutOfRange, "key exceeds state depth");
  if (value) {
    leaves_[key] = *value;
  } else {
    leaves_.erase(key);
  }
  Digest current = smt_leaf_digest(key, value);
  for (unsigned level = 0; level <= depth_; ++level) {
    const Key prefix = prefix_of(key, level);
    if (current == smt_default_digest(level)) {
      nodes_.erase(NodeId{level, prefix});
    } else {
      nodes_[NodeId{level, prefix}] = current;
    }
    if (level == depth_) break;
    const Digest& sibling = node(level, prefix ^ 1);
    current = (prefix & 1) ? pair_digest(sibling, current) : pair_digest(current, sibling);
  }
  root_ = current;
}

Digest SparseState::recompute_root() const {
  // Bottom-up over the occupied prefixes only.
  std::map<Key, Digest> layer;
  for (const auto& [k, v] : leaves_) layer.emplace(k, smt_leaf_digest(k, v));
  for (unsigned level = 0; level < depth_; ++level) {
    std::map<Key, Digest> next;
    for (auto it = layer.begin(); it != layer.end(); ++it) {
      const Key parent = it->first >> 1;
      if (next.count(parent)) continue;
      const Key left = parent << 1;
      auto l = layer.find(left);
      auto r = layer.find(left | 1);
      next.emplace(parent, pair_digest(l == layer.end() ? smt_default_digest(level) : l->second,
                                       r == layer.end() ? smt_default_digest(level) : r->second));
    }
    layer = std::move(next);
  }
  return layer.empty() ? smt_default_digest(depth_) : layer.begin()->second;
}

SmtProof SparseState::prove(Key key) const {
  if (!in_range(key)) throw Error(ErrorCode::IndexOutOfRange, "key exceeds state depth");
  SmtProof proof;
  proof.key = key;
  proof.siblings.reserve(depth_);
  for (unsigned level = 0; level < depth_; ++level) proof.siblings.push_back(node(level, prefix_of(key, level) ^ 1));
  return proof;
}

}  // namespace lazylight
