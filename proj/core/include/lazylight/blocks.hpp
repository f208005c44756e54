#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "lazylight/codec.hpp"
#include "lazylight/merkle.hpp"
#include "lazylight/transaction.hpp"

namespace lazylight {

/// Block transaction trees are binary.
inline constexpr unsigned kBlockTreeArity = 2;

struct Header {
  std::uint64_t height = 0;
  Digest tx_root;
  std::uint64_t tx_count = 0;

  bool operator==(const Header&) const = default;
};

Bytes encode(const Header& header);
Digest header_digest(const Header& header);

struct HeaderChain {
  std::vector<Header> headers;
};

struct Block {
  std::vector<Transaction> txs;
  Digest tx_root;
};

/// Leaf bytes for a real transaction; never equal to the padding leaf.
Bytes block_leaf(const Transaction& tx);
/// The reserved leaf used to pad block trees to a power of two.
Bytes padding_leaf();
MerkleTree block_tree(std::span<const Transaction> txs);

struct TxPosition {
  std::uint64_t block = 0;
  std::uint64_t index = 0;
};

/// Blocks plus their header chain and a position index over the transactions.
class BlockStore {
 public:
  BlockStore(std::span<const Transaction> ledger, std::size_t block_size);

  const HeaderChain& chain() const { return chain_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::uint64_t tx_count() const { return total_; }
  std::optional<TxPosition> position_of(const Transaction& tx) const;
  /// Ledger offset of a position.
  std::uint64_t ledger_index(const TxPosition& pos) const;
  InclusionProof prove(const TxPosition& pos) const;

 private:
  HeaderChain chain_;
  std::vector<Block> blocks_;
  std::vector<MerkleTree> trees_;
  std::vector<std::uint64_t> first_index_;
  std::unordered_map<std::string, TxPosition> index_;
  std::uint64_t total_ = 0;
};

std::pair<HeaderChain, std::vector<Block>> build_blocks(std::span<const Transaction> ledger, std::size_t block_size);

}  // namespace lazylight
