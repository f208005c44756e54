#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "lazylight/codec.hpp"

namespace lazylight {

using Key = std::uint64_t;
using Amount = std::uint64_t;

struct AccountTransfer {
  Key from = 0;
  Key to = 0;
  Amount amount = 0;
  std::uint64_t nonce = 0;

  bool operator==(const AccountTransfer&) const = default;
};

struct UtxoOutput {
  Key key = 0;
  Amount amount = 0;

  bool operator==(const UtxoOutput&) const = default;
};

struct UtxoSpend {
  std::vector<Key> inputs;
  std::vector<UtxoOutput> outputs;

  bool operator==(const UtxoSpend&) const = default;
};

struct Transaction {
  std::variant<AccountTransfer, UtxoSpend> body;

  bool operator==(const Transaction&) const = default;
  bool is_transfer() const { return std::holds_alternative<AccountTransfer>(body); }
  const AccountTransfer& transfer() const { return std::get<AccountTransfer>(body); }
  const UtxoSpend& spend() const { return std::get<UtxoSpend>(body); }
};

inline Transaction make_transfer(Key from, Key to, Amount amount, std::uint64_t nonce) {
  return Transaction{AccountTransfer{from, to, amount, nonce}};
}
inline Transaction make_spend(std::vector<Key> inputs, std::vector<UtxoOutput> outputs) {
  return Transaction{UtxoSpend{std::move(inputs), std::move(outputs)}};
}

void encode_into(Encoder& enc, const Transaction& tx);
Transaction decode_transaction(Decoder& dec);
Bytes encode(const Transaction& tx);
Digest transaction_id(const Transaction& tx);

/// Keys whose values the transaction reads or writes, first occurrence order.
std::vector<Key> touched_keys(const Transaction& tx);

}  // namespace lazylight
