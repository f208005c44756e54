#include "lazylight/ledger_gen.hpp"

#include <algorithm>
#include <string>

#include "lazylight/error.hpp"

namespace lazylight {

std::string_view to_string(LedgerModel m) noexcept {
  switch (m) {
    case LedgerModel::Account: return "account";
    case LedgerModel::Utxo: return "utxo";
    case LedgerModel::Stub: return "stub";
  }
  return "unknown";
}

LedgerModel parse_ledger_model(std::string_view s) {
  if (s == "account") return LedgerModel::Account;
  if (s == "utxo") return LedgerModel::Utxo;
  if (s == "stub") return LedgerModel::Stub;
  throw Error(ErrorCode::InvalidScenario, "unknown ledger model: " + std::string(s));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

void check_config(const LedgerConfig& c) {
  if (c.invalid_fraction < 0 || c.conflict_fraction < 0 || c.invalid_fraction + c.conflict_fraction > 1) {
    throw Error(ErrorCode::InvalidParams, "fractions must be non-negative and sum to at most 1");
  }
  if (c.accounts < 2) throw Error(ErrorCode::InvalidParams, "need at least two accounts");
  if (c.smt_depth < 64 && (c.accounts + 4 * c.length + 2) >> c.smt_depth != 0) {
    throw Error(ErrorCode::InvalidParams, "state depth too small for the generated key space");
  }
}

GeneratedLedger generate_accounts(const LedgerConfig& c) {
  std::mt19937_64 rng(c.seed);
  GeneratedLedger out;
  out.genesis.depth = c.smt_depth;
  for (std::uint64_t a = 0; a < c.accounts; ++a) out.genesis.allocations.emplace_back(a + 1, 1000 + uniform_below(rng, 1000));
  SparseState st = genesis_state(out.genesis);
  std::uint64_t nonce = 0;
  auto pick = [&] { return 1 + uniform_below(rng, c.accounts); };
  auto pick_other = [&](Key k) {
    Key o = pick();
    while (o == k) o = pick();
    return o;
  };
  auto emit = [&](Transaction tx) {
    apply(st, tx);
    out.txs.push_back(std::move(tx));
  };
  while (out.txs.size() < c.length) {
    const double r = unit_real(rng);
    const Key from = pick();
    const Amount balance = st.get(from).value_or(0);
    if (r < c.invalid_fraction) {
      emit(make_transfer(from, pick_other(from), balance + 1 + uniform_below(rng, 100), ++nonce));
    } else if (r < c.invalid_fraction + c.conflict_fraction && out.txs.size() + 2 <= c.length && balance >= 2) {
      // Both spend three quarters of the same balance; only the first applies.
      const Amount amount = balance - balance / 4;
      emit(make_transfer(from, pick_other(from), amount, ++nonce));
      emit(make_transfer(from, pick_other(from), amount, ++nonce));
    } else {
      emit(make_transfer(from, pick_other(from), balance == 0 ? 0 : 1 + uniform_below(rng, balance), ++nonce));
    }
  }
  return out;
}

GeneratedLedger generate_utxos(const LedgerConfig& c) {
  std::mt19937_64 rng(c.seed);
  GeneratedLedger out;
  out.genesis.depth = c.smt_depth;
  for (std::uint64_t a = 0; a < c.accounts; ++a) out.genesis.allocations.emplace_back(a + 1, 100 + uniform_below(rng, 1000));
  SparseState st = genesis_state(out.genesis);
  Key next_key = c.accounts + 1;
  auto live_inputs = [&](std::size_t want) {
    std::vector<Key> live;
    for (const auto& [k, v] : st.leaves()) live.push_back(k);
    std::vector<Key> chosen;
    while (!live.empty() && chosen.size() < want) {
      const auto idx = uniform_below(rng, live.size());
      chosen.push_back(live[idx]);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return chosen;
  };
  auto sum_of = [&](const std::vector<Key>& keys) {
    Amount s = 0;
    for (Key k : keys) s += st.get(k).value_or(0);
    return s;
  };
  auto split = [&](Amount total) {
    std::vector<UtxoOutput> outs;
    if (total >= 2 && uniform_below(rng, 2) == 0) {
      const Amount first = 1 + uniform_below(rng, total - 1);
      outs.push_back({next_key++, first});
      outs.push_back({next_key++, total - first});
    } else {
      outs.push_back({next_key++, total});
    }
    return outs;
  };
  auto emit = [&](Transaction tx) {
    apply(st, tx);
    out.txs.push_back(std::move(tx));
  };
  while (out.txs.size() < c.length) {
    const double r = unit_real(rng);
    std::vector<Key> inputs = live_inputs(1 + uniform_below(rng, 3));
    if (inputs.empty()) {
      // Nothing left to spend; a spend of a never-created key is invalid.
      emit(make_spend({next_key++}, {{next_key++, 1}}));
      continue;
    }
    const Amount total = sum_of(inputs);
    if (r < c.invalid_fraction) {
      emit(make_spend(inputs, {{next_key++, total + 1 + uniform_below(rng, 50)}}));
    } else if (r < c.invalid_fraction + c.conflict_fraction && out.txs.size() + 2 <= c.length) {
      // Double spend: the second use of the same inputs is rejected.
      emit(make_spend(inputs, split(total)));
      emit(make_spend(inputs, split(total)));
    } else {
      emit(make_spend(inputs, split(total)));
    }
  }
  return out;
}

}  // namespace

GeneratedLedger generate_ledger(const LedgerConfig& config) {
  check_config(config);
  switch (config.model) {
    case LedgerModel::Account: return generate_accounts(config);
    case LedgerModel::Utxo: return generate_utxos(config);
    case LedgerModel::Stub: break;
  }
  throw Error(ErrorCode::InvalidParams, "the stub model has no materialized ledger");
}

std::uint64_t ViewSchedule::union_length(std::uint64_t round) const { return std::min(total, alpha * round); }

std::uint64_t ViewSchedule::view_length(std::size_t party, std::uint64_t round) const {
  const std::uint64_t lag = lags.at(party);
  return round < lag ? 0 : union_length(round - lag);
}

std::uint64_t ViewSchedule::intersection_length(std::uint64_t round) const {
  std::uint64_t len = union_length(round);
  for (std::size_t p = 0; p < lags.size(); ++p) len = std::min(len, view_length(p, round));
  return len;
}

// Views are lengths into one canonical sequence, so the prefix relation
// reduces to each view never shrinking and never passing the union.
bool satisfies_safety(const ViewSchedule& s, std::uint64_t rounds) {
  for (std::size_t p = 0; p < s.lags.size(); ++p) {
    for (std::uint64_t r = 0; r < rounds; ++r) {
      if (s.view_length(p, r) > s.union_length(r)) return false;
      if (s.view_length(p, r + 1) < s.view_length(p, r)) return false;
    }
  }
  return true;
}

bool satisfies_liveness(const ViewSchedule& s, std::uint64_t rounds) {
  for (std::size_t p = 0; p < s.lags.size(); ++p) {
    for (std::uint64_t r = 0; r < rounds; ++r) {
      if (s.view_length(p, r + s.u) < s.union_length(r)) return false;
    }
  }
  return true;
}

bool satisfies_lipschitz(const ViewSchedule& s, std::uint64_t rounds) {
  for (std::uint64_t r1 = 0; r1 < rounds; ++r1) {
    for (std::uint64_t r2 = r1; r2 < rounds; ++r2) {
      if (s.union_length(r2) - s.union_length(r1) > s.alpha * (r2 - r1)) return false;
    }
  }
  return true;
}

}  // namespace lazylight
