#include "lazylight/transaction.hpp"

#include <algorithm>

#include "lazylight/error.hpp"
#include "lazylight/hash.hpp"

namespace lazylight {

namespace {

constexpr std::uint8_t kTransferKind = 0;
constexpr std::uint8_t kSpendKind = 1;

}  // namespace

void encode_into(Encoder& enc, const Transaction& tx) {
  if (tx.is_transfer()) {
    const auto& t = tx.transfer();
    enc.u8(kTransferKind).u64(t.from).u64(t.to).u64(t.amount).u64(t.nonce);
    return;
  }
  const auto& s = tx.spend();
  enc.u8(kSpendKind).u64(s.inputs.size());
  for (Key k : s.inputs) enc.u64(k);
  enc.u64(s.outputs.size());
  for (const auto& o : s.outputs) enc.u64(o.key).u64(o.amount);
}

Transaction decode_transaction(Decoder& dec) {
  const std::uint8_t kind = dec.u8();
  if (kind == kTransferKind) {
    AccountTransfer t;
    t.from = dec.u64();
    t.to = dec.u64();
    t.amount = dec.u64();
    t.nonce = dec.u64();
    return Transaction{t};
  }
  if (kind != kSpendKind) throw Error(ErrorCode::DecodeError, "unknown transaction kind");
  UtxoSpend s;
  const std::uint64_t n_in = dec.count(8);
  for (std::uint64_t i = 0; i < n_in; ++i) s.inputs.push_back(dec.u64());
  const std::uint64_t n_out = dec.count(16);
  for (std::uint64_t i = 0; i < n_out; ++i) {
    UtxoOutput o;
    o.key = dec.u64();
    o.amount = dec.u64();
    s.outputs.push_back(o);
  }
  return Transaction{std::move(s)};
}

Bytes encode(const Transaction& tx) {
  Encoder enc;
  encode_into(enc, tx);
  return enc.take();
}

Digest transaction_id(const Transaction& tx) { return hash_tagged(DomainTag::Transaction, encode(tx)); }

std::vector<Key> touched_keys(const Transaction& tx) {
  std::vector<Key> keys;
  auto add = [&keys](Key k) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  };
  if (tx.is_transfer()) {
    add(tx.transfer().from);
    add(tx.transfer().to);
  } else {
    for (Key k : tx.spend().inputs) add(k);
    for (const auto& o : tx.spend().outputs) add(o.key);
  }
  return keys;
}

}  // namespace lazylight
