#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "lazylight/digest_column.hpp"
#include "lazylight/ledger.hpp"

namespace lazylight {

/// Read-only view of an augmented dirty ledger.
class EntrySource {
 public:
  virtual ~EntrySource() = default;
  virtual std::uint64_t size() const = 0;
  virtual AugmentedEntry at(std::uint64_t i) const = 0;
};

/// Prefix of a materialized entry vector.
class VectorEntries final : public EntrySource {
 public:
  explicit VectorEntries(std::shared_ptr<const std::vector<AugmentedEntry>> entries);
  VectorEntries(std::shared_ptr<const std::vector<AugmentedEntry>> entries, std::uint64_t length);

  std::uint64_t size() const override { return length_; }
  AugmentedEntry at(std::uint64_t i) const override;

 private:
  std::shared_ptr<const std::vector<AugmentedEntry>> entries_;
  std::uint64_t length_;
};

/// Entries generated on demand from (seed, index) for stubbed execution:
/// entry i > 0 holds a transfer whose nonce is i and a pseudorandom state
/// commitment. Only the canonical table can vouch for a transition.
class SyntheticEntries final : public EntrySource {
 public:
  SyntheticEntries(std::uint64_t seed, std::uint64_t length) : seed_(seed), length_(length) {}

  std::uint64_t size() const override { return length_; }
  AugmentedEntry at(std::uint64_t i) const override;

 private:
  std::uint64_t seed_;
  std::uint64_t length_;
};

/// A prefix of another source with some entries replaced.
class PatchedEntries final : public EntrySource {
 public:
  PatchedEntries(std::shared_ptr<const EntrySource> base, std::uint64_t length,
                 std::map<std::uint64_t, AugmentedEntry> overrides);

  std::uint64_t size() const override { return length_; }
  AugmentedEntry at(std::uint64_t i) const override;

 private:
  std::shared_ptr<const EntrySource> base_;
  std::uint64_t length_;
  std::map<std::uint64_t, AugmentedEntry> overrides_;
};

DigestColumn leaf_digest_column(const EntrySource& entries);

/// SplitMix64 finalizer, used for reproducible stub data.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace lazylight
