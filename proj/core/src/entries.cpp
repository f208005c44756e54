#include "lazylight/entries.hpp"

#include "lazylight/error.hpp"

namespace lazylight {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

VectorEntries::VectorEntries(std::shared_ptr<const std::vector<AugmentedEntry>> entries)
    : entries_(std::move(entries)), length_(entries_->size()) {}

VectorEntries::VectorEntries(std::shared_ptr<const std::vector<AugmentedEntry>> entries, std::uint64_t length)
    : entries_(std::move(entries)), length_(length) {
  if (length_ > entries_->size()) throw Error(ErrorCode::InvalidLength, "view longer than its entries");
}

AugmentedEntry VectorEntries::at(std::uint64_t i) const {
  if (i >= length_) throw Error(ErrorCode::IndexOutOfRange, "entry index out of range");
  return (*entries_)[i];
}

AugmentedEntry SyntheticEntries::at(std::uint64_t i) const {
  if (i >= length_) throw Error(ErrorCode::IndexOutOfRange, "entry index out of range");
  AugmentedEntry e;
  const std::uint64_t base = mix64(seed_ ^ mix64(i));
  for (std::size_t w = 0; w < kDigestSize / 8; ++w) {
    const std::uint64_t v = mix64(base + w);
    for (std::size_t b = 0; b < 8; ++b) e.state.digest.bytes[w * 8 + b] = static_cast<std::uint8_t>(v >> (56 - 8 * b));
  }
  if (i > 0) {
    const std::uint64_t r = mix64(base + 100);
    e.tx = make_transfer(r & 0xfffff, (r >> 20) & 0xfffff, (r >> 40) % 1000000, i);
  }
  return e;
}

PatchedEntries::PatchedEntries(std::shared_ptr<const EntrySource> base, std::uint64_t length,
                               std::map<std::uint64_t, AugmentedEntry> overrides)
    : base_(std::move(base)), length_(length), overrides_(std::move(overrides)) {
  if (length_ > base_->size()) throw Error(ErrorCode::InvalidLength, "view longer than its base");
}

AugmentedEntry PatchedEntries::at(std::uint64_t i) const {
  if (i >= length_) throw Error(ErrorCode::IndexOutOfRange, "entry index out of range");
  auto it = overrides_.find(i);
  return it != overrides_.end() ? it->second : base_->at(i);
}

DigestColumn leaf_digest_column(const EntrySource& entries) {
  DigestColumn column;
  for (std::uint64_t i = 0; i < entries.size(); ++i) column.push_back(entry_leaf_digest(entries.at(i)));
  return column;
}

}  // namespace lazylight
