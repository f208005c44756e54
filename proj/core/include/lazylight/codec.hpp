#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lazylight {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::size_t kHashBits = 256;
inline constexpr std::size_t kDigestSize = kHashBits / 8;

struct Digest {
  std::array<std::uint8_t, kDigestSize> bytes{};

  auto operator<=>(const Digest&) const = default;
  ByteView view() const { return {bytes.data(), bytes.size()}; }
  std::string hex() const;
  static Digest from_hex(std::string_view hex);
};

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

/// Canonical writer. Variable-length fields carry an 8-byte big-endian
/// length, lists an 8-byte big-endian count.
class Encoder {
 public:
  Encoder& u8(std::uint8_t v);
  Encoder& u64(std::uint64_t v);
  Encoder& varint(std::uint64_t v);
  Encoder& bytes(ByteView v);
  Encoder& digest(const Digest& d);
  Encoder& digests(std::span<const Digest> ds);
  Encoder& raw(ByteView v);

  const Bytes& buffer() const { return buf_; }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

/// Reader matching Encoder; throws Error(DecodeError) on malformed input.
class Decoder {
 public:
  explicit Decoder(ByteView in) : in_(in) {}

  std::uint8_t u8();
  std::uint64_t u64();
  std::uint64_t varint();
  Bytes bytes();
  Digest digest();
  std::vector<Digest> digests();
  /// Reads a count and rejects values that could not fit in the remaining
  /// input given a minimum element size.
  std::uint64_t count(std::size_t min_element_size);

  bool done() const { return pos_ == in_.size(); }
  void expect_done() const;
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const;

  ByteView in_;
  std::size_t pos_ = 0;
};

/// encode(byte string): length-prefixed copy.
Bytes encode(ByteView value);
/// encode(child list): count-prefixed concatenation of digests.
Bytes encode(std::span<const Digest> children);

}  // namespace lazylight
