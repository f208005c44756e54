#include "lazylight/digest_column.hpp"

#include "lazylight/error.hpp"

namespace lazylight {

void DigestColumn::push_back(const Digest& d) {
  const std::uint64_t used = size_ % kChunk;
  if (used == 0) {
    auto chunk = std::make_shared<Chunk>();
    chunk->reserve(kChunk);
    chunks_.push_back(std::move(chunk));
  } else {
    auto& last = chunks_.back();
    // A shared chunk, or one holding elements past our logical end, is copied.
    if (last.use_count() > 1 || last->size() != used) {
      auto copy = std::make_shared<Chunk>(last->begin(), last->begin() + static_cast<std::ptrdiff_t>(used));
      copy->reserve(kChunk);
      last = std::move(copy);
    }
  }
  chunks_.back()->push_back(d);
  ++size_;
}

void DigestColumn::set(std::uint64_t i, const Digest& d) {
  if (i >= size_) throw Error(ErrorCode::IndexOutOfRange, "digest column index");
  auto& chunk = chunks_[i / kChunk];
  if (chunk.use_count() > 1) chunk = std::make_shared<Chunk>(*chunk);
  (*chunk)[i % kChunk] = d;
}

void DigestColumn::append(const DigestColumn& other) {
  if (size_ % kChunk == 0) {
    chunks_.insert(chunks_.end(), other.chunks_.begin(), other.chunks_.end());
    size_ += other.size_;
    return;
  }
  for (std::uint64_t i = 0; i < other.size_; ++i) push_back(other[i]);
}

DigestColumn DigestColumn::slice(std::uint64_t offset, std::uint64_t count) const {
  if (offset > size_ || count > size_ - offset) throw Error(ErrorCode::IndexOutOfRange, "digest column slice");
  DigestColumn out;
  if (offset % kChunk == 0) {
    const std::uint64_t first = offset / kChunk;
    const std::uint64_t n = (count + kChunk - 1) / kChunk;
    out.chunks_.assign(chunks_.begin() + static_cast<std::ptrdiff_t>(first),
                       chunks_.begin() + static_cast<std::ptrdiff_t>(first + n));
    out.size_ = count;
    return out;
  }
  for (std::uint64_t i = 0; i < count; ++i) out.push_back((*this)[offset + i]);
  return out;
}

std::vector<Digest> DigestColumn::copy_range(std::uint64_t offset, std::uint64_t count) const {
  if (offset > size_ || count > size_ - offset) throw Error(ErrorCode::IndexOutOfRange, "digest column range");
  std::vector<Digest> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back((*this)[offset + i]);
  return out;
}

}  // namespace lazylight
