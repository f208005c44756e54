#pragma once

#include <memory>

#include "lazylight/blocks.hpp"
#include "lazylight/codec.hpp"
#include "lazylight/entries.hpp"
#include "lazylight/execution.hpp"

namespace lazylight {

/// Verifier-side checks behind the consensus and execution oracles. The
/// verifier fetches the prover's payload over the network; the backend
/// decides whether that payload proves the statement.
class OracleBackend {
 public:
  virtual ~OracleBackend() = default;
  virtual bool adjacency(const Transaction* prev, const Transaction& next, ByteView proof) const = 0;
  virtual OracleVerdict transition(const StateCommitment& pre, const Transaction& tx, const StateCommitment& post,
                                   ByteView witness) const = 0;
  virtual unsigned smt_depth() const = 0;
};

/// Header-chain inclusion proofs and sparse-Merkle witnesses.
class ChainBackend final : public OracleBackend {
 public:
  ChainBackend(HeaderChain chain, unsigned smt_depth) : chain_(std::move(chain)), depth_(smt_depth) {}

  bool adjacency(const Transaction* prev, const Transaction& next, ByteView proof) const override;
  OracleVerdict transition(const StateCommitment& pre, const Transaction& tx, const StateCommitment& post,
                           ByteView witness) const override;
  unsigned smt_depth() const override { return depth_; }
  const HeaderChain& chain() const { return chain_; }

 private:
  HeaderChain chain_;
  unsigned depth_;
};

/// Stubbed oracles for large simulations: a statement holds only when it
/// matches the canonical entry table, whatever the prover sends.
class StubBackend final : public OracleBackend {
 public:
  explicit StubBackend(std::shared_ptr<const EntrySource> canonical) : canonical_(std::move(canonical)) {}

  bool adjacency(const Transaction* prev, const Transaction& next, ByteView proof) const override;
  OracleVerdict transition(const StateCommitment& pre, const Transaction& tx, const StateCommitment& post,
                           ByteView witness) const override;
  unsigned smt_depth() const override { return kDefaultSmtDepth; }

 private:
  std::optional<std::uint64_t> position(const Transaction& tx) const;

  std::shared_ptr<const EntrySource> canonical_;
};

}  // namespace lazylight
