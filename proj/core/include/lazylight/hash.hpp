#pragma once

#include <cstdint>
#include <string_view>

#include "lazylight/codec.hpp"

namespace lazylight {

enum class DomainTag : std::uint8_t {
  Leaf = 0x00,
  Inner = 0x01,
  PeakBag = 0x02,
  Transaction = 0x03,
  StateLeaf = 0x04,
  Header = 0x05,
};

/// H(tag || payload).
Digest hash_tagged(DomainTag tag, ByteView payload);

/// Name of the hash compiled in ("sha256" or "sha3-256").
std::string_view hash_name() noexcept;

}  // namespace lazylight
