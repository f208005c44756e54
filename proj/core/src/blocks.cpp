#include "lazylight/blocks.hpp"

#include <string>

#include "lazylight/error.hpp"
#include "lazylight/hash.hpp"

namespace lazylight {

namespace {

constexpr std::uint8_t kPaddingByte = 0xff;

std::string key_of(const Transaction& tx) {
  Bytes b = encode(tx);
  return std::string(b.begin(), b.end());
}

}  // namespace

Bytes encode(const Header& header) {
  return Encoder().u64(header.height).digest(header.tx_root).u64(header.tx_count).take();
}

Digest header_digest(const Header& header) { return hash_tagged(DomainTag::Header, encode(header)); }

// Encoded transactions start with kind byte 0 or 1, so a lone 0xff cannot alias one.
Bytes block_leaf(const Transaction& tx) { return encode(tx); }

Bytes padding_leaf() { return Bytes{kPaddingByte}; }

MerkleTree block_tree(std::span<const Transaction> txs) {
  std::uint64_t width = 1;
  while (width < txs.size()) width <<= 1;
  std::vector<Bytes> leaves;
  leaves.reserve(width);
  for (const auto& tx : txs) leaves.push_back(block_leaf(tx));
  while (leaves.size() < width) leaves.push_back(padding_leaf());
  return MerkleTree::from_leaves(leaves, kBlockTreeArity);
}

BlockStore::BlockStore(std::span<const Transaction> ledger, std::size_t block_size) {
  if (block_size == 0) throw Error(ErrorCode::InvalidBlockSize, "block size must be positive");
  for (std::size_t start = 0; start < ledger.size(); start += block_size) {
    const std::size_t n = std::min(block_size, ledger.size() - start);
    Block block;
    block.txs.assign(ledger.begin() + static_cast<std::ptrdiff_t>(start),
                     ledger.begin() + static_cast<std::ptrdiff_t>(start + n));
    MerkleTree tree = block_tree(block.txs);
    block.tx_root = tree.root();
    const std::uint64_t height = blocks_.size();
    chain_.headers.push_back(Header{height, block.tx_root, n});
    for (std::size_t i = 0; i < n; ++i) index_.emplace(key_of(block.txs[i]), TxPosition{height, i});
    first_index_.push_back(start);
    blocks_.push_back(std::move(block));
    trees_.push_back(std::move(tree));
  }
  total_ = ledger.size();
}

std::optional<TxPosition> BlockStore::position_of(const Transaction& tx) const {
  auto it = index_.find(key_of(tx));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t BlockStore::ledger_index(const TxPosition& pos) const { return first_index_.at(pos.block) + pos.index; }

InclusionProof BlockStore::prove(const TxPosition& pos) const { return trees_.at(pos.block).prove(pos.index); }

std::pair<HeaderChain, std::vector<Block>> build_blocks(std::span<const Transaction> ledger, std::size_t block_size) {
  BlockStore store(ledger, block_size);
  return {store.chain(), store.blocks()};
}

}  // namespace lazylight
