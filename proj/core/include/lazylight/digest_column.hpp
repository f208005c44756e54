#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lazylight/codec.hpp"

namespace lazylight {

/// Append-friendly digest array stored in fixed-size copy-on-write chunks, so
/// that copies, prefixes and aligned concatenations share storage.
class DigestColumn {
 public:
  static constexpr std::uint64_t kChunk = 1024;

  DigestColumn() = default;

  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Digest& operator[](std::uint64_t i) const { return (*chunks_[i / kChunk])[i % kChunk]; }
  const Digest& back() const { return (*this)[size_ - 1]; }

  void push_back(const Digest& d);
  void set(std::uint64_t i, const Digest& d);
  void append(const DigestColumn& other);
  DigestColumn slice(std::uint64_t offset, std::uint64_t count) const;
  std::vector<Digest> copy_range(std::uint64_t offset, std::uint64_t count) const;

 private:
  using Chunk = std::vector<Digest>;

  std::vector<std::shared_ptr<Chunk>> chunks_;
  std::uint64_t size_ = 0;
};

}  // namespace lazylight
