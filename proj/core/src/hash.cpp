#include "lazylight/hash.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace lazylight {

namespace {

#if defined(LAZYLIGHT_HASH_SHA3_256)
constexpr const char* kAlgorithm = "SHA3-256";
constexpr std::string_view kName = "sha3-256";
#else
constexpr const char* kAlgorithm = "SHA256";
constexpr std::string_view kName = "sha256";
#endif

const EVP_MD* algorithm() {
  static const EVP_MD* md = [] {
    EVP_MD* fetched = EVP_MD_fetch(nullptr, kAlgorithm, nullptr);
    if (fetched == nullptr) throw std::runtime_error("hash algorithm unavailable");
    return fetched;
  }();
  return md;
}

struct CtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

EVP_MD_CTX* context() {
  thread_local std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx) throw std::runtime_error("cannot allocate digest context");
  return ctx.get();
}

}  // namespace

Digest hash_tagged(DomainTag tag, ByteView payload) {
  static_assert(kDigestSize == 32);
  EVP_MD_CTX* ctx = context();
  const auto tag_byte = static_cast<std::uint8_t>(tag);
  Digest out;
  unsigned int len = 0;
  if (EVP_DigestInit_ex2(ctx, algorithm(), nullptr) != 1 || EVP_DigestUpdate(ctx, &tag_byte, 1) != 1 ||
      EVP_DigestUpdate(ctx, payload.data(), payload.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out.bytes.data(), &len) != 1) {
    throw std::runtime_error("digest computation failed");
  }
  return out;
}

std::string_view hash_name() noexcept { return kName; }

}  // namespace lazylight
