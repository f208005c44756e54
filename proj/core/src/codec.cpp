#include "lazylight/codec.hpp"

#include <algorithm>

#include "lazylight/error.hpp"

namespace lazylight {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorCode::DecodeError, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::DecodeError, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::string Digest::hex() const { return to_hex(view()); }

Digest Digest::from_hex(std::string_view hex) {
  Bytes raw = lazylight::from_hex(hex);
  if (raw.size() != kDigestSize) throw Error(ErrorCode::DecodeError, "digest has wrong length");
  Digest d;
  std::copy(raw.begin(), raw.end(), d.bytes.begin());
  return d;
}

Encoder& Encoder::u8(std::uint8_t v) {
  buf_.push_back(v);
  return *this;
}

Encoder& Encoder::u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) buf_.push_back(static_cast<std::uint8_t>(v >> shift));
  return *this;
}

Encoder& Encoder::varint(std::uint64_t v) {
  while (v >= 0x80) {
    buf_.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  buf_.push_back(static_cast<std::uint8_t>(v));
  return *this;
}

Encoder& Encoder::bytes(ByteView v) {
  u64(v.size());
  return raw(v);
}

Encoder& Encoder::digest(const Digest& d) { return raw(d.view()); }

Encoder& Encoder::digests(std::span<const Digest> ds) {
  u64(ds.size());
  buf_.reserve(buf_.size() + ds.size() * kDigestSize);
  for (const auto& d : ds) digest(d);
  return *this;
}

Encoder& Encoder::raw(ByteView v) {
  buf_.insert(buf_.end(), v.begin(), v.end());
  return *this;
}

void Decoder::need(std::size_t n) const {
  if (in_.size() - pos_ < n) throw Error(ErrorCode::DecodeError, "truncated input");
}

std::uint8_t Decoder::u8() {
  need(1);
  return in_[pos_++];
}

std::uint64_t Decoder::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_++];
  return v;
}

std::uint64_t Decoder::varint() {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    std::uint8_t b = u8();
    if (shift == 63 && b > 1) throw Error(ErrorCode::DecodeError, "varint overflow");
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) {
      if (b == 0 && shift != 0) throw Error(ErrorCode::DecodeError, "non-minimal varint");
      return v;
    }
  }
  throw Error(ErrorCode::DecodeError, "varint too long");
}

Bytes Decoder::bytes() {
  std::uint64_t n = u64();
  need(n);
  Bytes out(in_.begin() + static_cast<std::ptrdiff_t>(pos_), in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
  pos_ += n;
  return out;
}

Digest Decoder::digest() {
  need(kDigestSize);
  Digest d;
  std::copy_n(in_.begin() + static_cast<std::ptrdiff_t>(pos_), kDigestSize, d.bytes.begin());
  pos_ += kDigestSize;
  return d;
}

std::vector<Digest> Decoder::digests() {
  std::uint64_t n = count(kDigestSize);
  std::vector<Digest> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(digest());
  return out;
}

std::uint64_t Decoder::count(std::size_t min_element_size) {
  std::uint64_t n = u64();
  if (min_element_size > 0 && n > remaining() / min_element_size) {
    throw Error(ErrorCode::DecodeError, "list count exceeds input");
  }
  return n;
}

void Decoder::expect_done() const {
  if (!done()) throw Error(ErrorCode::DecodeError, "trailing bytes");
}

Bytes encode(ByteView value) { return Encoder().bytes(value).take(); }

Bytes encode(std::span<const Digest> children) { return Encoder().digests(children).take(); }

}  // namespace lazylight
