#include "lazylight/execution.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <string>

#include "lazylight/error.hpp"
#include "lazylight/merkle.hpp"

namespace lazylight {

namespace {

using Writes = std::vector<std::pair<Key, std::optional<Amount>>>;
using Lookup = std::function<std::optional<Amount>(Key)>;

bool checked_add(Amount a, Amount b, Amount& out) { return !__builtin_add_overflow(a, b, &out); }

// Validity that does not depend on state values.
bool shape_valid(const Transaction& tx, unsigned depth) {
  auto in_range = [depth](Key k) { return depth >= 64 || (k >> depth) == 0; };
  if (tx.is_transfer()) {
    const auto& t = tx.transfer();
    return in_range(t.from) && in_range(t.to);
  }
  const auto& s = tx.spend();
  if (s.inputs.empty() || s.inputs.size() + s.outputs.size() > kMaxUtxoTouched) return false;
  std::set<Key> seen;
  for (Key k : s.inputs) {
    if (!in_range(k) || !seen.insert(k).second) return false;
  }
  for (const auto& o : s.outputs) {
    if (!in_range(o.key) || !seen.insert(o.key).second) return false;
  }
  return true;
}

// The writes a valid transaction performs, or nullopt when it is invalid.
std::optional<Writes> transition_writes(const Transaction& tx, const Lookup& lookup, unsigned depth) {
  if (!shape_valid(tx, depth)) return std::nullopt;
  if (tx.is_transfer()) {
    const auto& t = tx.transfer();
    const Amount from_balance = lookup(t.from).value_or(0);
    if (from_balance < t.amount) return std::nullopt;
    if (t.from == t.to) return Writes{};
    Amount to_balance = 0;
    if (!checked_add(lookup(t.to).value_or(0), t.amount, to_balance)) return std::nullopt;
    const Amount left = from_balance - t.amount;
    Writes w;
    w.emplace_back(t.from, left == 0 ? std::nullopt : std::optional<Amount>(left));
    w.emplace_back(t.to, to_balance == 0 ? std::nullopt : std::optional<Amount>(to_balance));
    return w;
  }
  const auto& s = tx.spend();
  Amount in_sum = 0;
  for (Key k : s.inputs) {
    auto v = lookup(k);
    if (!v || !checked_add(in_sum, *v, in_sum)) return std::nullopt;
  }
  Amount out_sum = 0;
  for (const auto& o : s.outputs) {
    if (lookup(o.key) || !checked_add(out_sum, o.amount, out_sum)) return std::nullopt;
  }
  if (in_sum < out_sum) return std::nullopt;
  Writes w;
  for (Key k : s.inputs) w.emplace_back(k, std::nullopt);
  for (const auto& o : s.outputs) w.emplace_back(o.key, o.amount);
  return w;
}

}  // namespace

std::vector<std::pair<Key, Amount>> parse_allocations(std::string_view text) {
  std::vector<std::pair<Key, Amount>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorCode::InvalidGenesis, "allocation line needs key,amount");
    std::string_view key_hex = line.substr(0, comma);
    std::string_view amount = line.substr(comma + 1);
    if (key_hex.starts_with("0x")) key_hex.remove_prefix(2);
    Key key = 0;
    Amount value = 0;
    auto r1 = std::from_chars(key_hex.data(), key_hex.data() + key_hex.size(), key, 16);
    auto r2 = std::from_chars(amount.data(), amount.data() + amount.size(), value, 10);
    if (r1.ec != std::errc() || r1.ptr != key_hex.data() + key_hex.size() || r2.ec != std::errc() ||
        r2.ptr != amount.data() + amount.size()) {
      throw Error(ErrorCode::InvalidGenesis, "malformed allocation: " + std::string(line));
    }
    out.emplace_back(key, value);
  }
  return out;
}

SparseState genesis_state(const Genesis& genesis) {
  SparseState st(genesis.depth);
  std::set<Key> seen;
  for (const auto& [key, amount] : genesis.allocations) {
    if (!seen.insert(key).second) throw Error(ErrorCode::InvalidGenesis, "duplicate allocation key");
    if (!st.in_range(key)) throw Error(ErrorCode::InvalidGenesis, "allocation key exceeds state depth");
    st.set(key, amount);
  }
  return st;
}

StateCommitment commit(const SparseState& st) { return StateCommitment{st.root()}; }

bool is_valid(const SparseState& st, const Transaction& tx) {
  return transition_writes(tx, [&st](Key k) { return st.get(k); }, st.depth()).has_value();
}

bool apply(SparseState& st, const Transaction& tx) {
  auto writes = transition_writes(tx, [&st](Key k) { return st.get(k); }, st.depth());
  if (!writes) return false;
  for (const auto& [key, value] : *writes) st.set(key, value);
  return true;
}

SparseState delta(const SparseState& st, const Transaction& tx) {
  SparseState out = st;
  apply(out, tx);
  return out;
}

SparseState delta_star(const SparseState& st0, std::span<const Transaction> txs) {
  SparseState st = st0;
  for (const auto& tx : txs) apply(st, tx);
  return st;
}

Bytes encode(const ExecutionWitness& w) {
  Encoder enc;
  enc.u64(w.touched.size());
  for (const auto& t : w.touched) {
    enc.u64(t.key);
    enc.u8(t.before ? 1 : 0);
    if (t.before) enc.u64(*t.before);
    encode_into(enc, t.proof);
  }
  return enc.take();
}

ExecutionWitness decode_witness(ByteView bytes) {
  Decoder dec(bytes);
  ExecutionWitness w;
  const std::uint64_t n = dec.count(25);
  for (std::uint64_t i = 0; i < n; ++i) {
    TouchedLeaf t;
    t.key = dec.u64();
    const std::uint8_t present = dec.u8();
    if (present > 1) throw Error(ErrorCode::DecodeError, "bad presence flag");
    if (present) t.before = dec.u64();
    t.proof = decode_smt_proof(dec);
    w.touched.push_back(std::move(t));
  }
  dec.expect_done();
  return w;
}

ExecutionWitness make_witness(const SparseState& st, const Transaction& tx) {
  ExecutionWitness w;
  for (Key k : touched_keys(tx)) {
    if (!st.in_range(k)) continue;
    w.touched.push_back(TouchedLeaf{k, st.get(k), st.prove(k)});
  }
  return w;
}

std::optional<StateCommitment> succinct_delta(const StateCommitment& pre, const Transaction& tx,
                                              const ExecutionWitness& w, unsigned depth) {
  if (depth == 0 || depth > 64) return std::nullopt;
  if (!shape_valid(tx, depth)) return pre;

  // Every supplied leaf must open against the pre-state root.
  std::map<Key, const TouchedLeaf*> by_key;
  for (const auto& t : w.touched) {
    if (!verify_smt(t.proof, pre.digest, t.key, t.before, depth)) return std::nullopt;
    by_key.emplace(t.key, &t);
  }
  for (Key k : touched_keys(tx)) {
    if (!by_key.count(k)) return std::nullopt;
  }

  auto writes = transition_writes(tx, [&by_key](Key k) { return by_key.at(k)->before; }, depth);
  if (!writes || writes->empty()) return pre;

  // Partial tree: every node on a witnessed path plus its siblings.
  std::vector<std::map<Key, Digest>> known(depth + 1);
  auto record = [&known](unsigned level, Key prefix, const Digest& d) {
    auto [it, inserted] = known[level].emplace(prefix, d);
    return inserted || it->second == d;
  };
  for (const auto& [key, leaf] : by_key) {
    Digest current = smt_leaf_digest(key, leaf->before);
    for (unsigned level = 0; level < depth; ++level) {
      const Key prefix = key >> level;
      if (!record(level, prefix, current) || !record(level, prefix ^ 1, leaf->proof.siblings[level])) {
        return std::nullopt;
      }
      const std::array<Digest, 2> pair = (prefix & 1) ? std::array<Digest, 2>{leaf->proof.siblings[level], current}
                                                      : std::array<Digest, 2>{current, leaf->proof.siblings[level]};
      current = inner_digest(pair);
    }
  }

  std::set<Key> dirty;
  for (const auto& [key, value] : *writes) {
    known[0][key] = smt_leaf_digest(key, value);
    dirty.insert(key);
  }
  for (unsigned level = 0; level < depth; ++level) {
    std::set<Key> parents;
    for (Key prefix : dirty) {
      const Key parent = prefix >> 1;
      if (!parents.insert(parent).second) continue;
      const std::array<Digest, 2> pair{known[level].at(parent << 1), known[level].at((parent << 1) | 1)};
      known[level + 1][parent] = inner_digest(pair);
    }
    dirty = std::move(parents);
  }
  return StateCommitment{known[depth].at(0)};
}

std::string_view to_string(OracleVerdict v) noexcept {
  switch (v) {
    case OracleVerdict::Accepted: return "Accepted";
    case OracleVerdict::Mismatch: return "Mismatch";
    case OracleVerdict::Bottom: return "Bottom";
    case OracleVerdict::Timeout: return "Timeout";
  }
  return "Unknown";
}

OracleVerdict exec_oracle_query(const Transaction& tx, const StateCommitment& pre, const StateCommitment& post_claim,
                                unsigned depth, const std::function<std::optional<Bytes>()>& fetch) {
  std::optional<Bytes> reply = fetch();
  if (!reply) return OracleVerdict::Timeout;
  ExecutionWitness w;
  try {
    w = decode_witness(*reply);
  } catch (const Error&) {
    return OracleVerdict::Bottom;
  }
  auto post = succinct_delta(pre, tx, w, depth);
  if (!post) return OracleVerdict::Bottom;
  return *post == post_claim ? OracleVerdict::Accepted : OracleVerdict::Mismatch;
}

}  // namespace lazylight
