#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "lazylight/execution.hpp"
#include "lazylight/ledger.hpp"

namespace lazylight {

enum class LedgerModel { Account, Utxo, Stub };

std::string_view to_string(LedgerModel m) noexcept;
LedgerModel parse_ledger_model(std::string_view s);

struct LedgerConfig {
  std::uint64_t length = 64;
  double invalid_fraction = 0.1;
  double conflict_fraction = 0.05;
  std::uint64_t seed = 1;
  LedgerModel model = LedgerModel::Account;
  std::size_t block_size = 16;
  unsigned smt_depth = kDefaultSmtDepth;
  std::uint64_t accounts = 32;
};

struct GeneratedLedger {
  Genesis genesis;
  DirtyLedger txs;
};

/// Seeded dirty ledger mixing valid, invalid and conflicting transactions.
/// Not defined for the stub model, whose entries are synthesized on demand.
GeneratedLedger generate_ledger(const LedgerConfig& config);

/// Platform-independent helpers over a 64-bit Mersenne twister.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
double unit_real(std::mt19937_64& rng);

/// Per-round lengths of honest views into one canonical ledger. The union
/// ledger grows by at most `alpha` entries per round; each honest party lags
/// it by at most `u` rounds.
struct ViewSchedule {
  std::uint64_t alpha = 1;
  std::uint64_t u = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> lags;

  std::uint64_t union_length(std::uint64_t round) const;
  std::uint64_t view_length(std::size_t party, std::uint64_t round) const;
  std::uint64_t intersection_length(std::uint64_t round) const;
};

bool satisfies_safety(const ViewSchedule& s, std::uint64_t rounds);
bool satisfies_liveness(const ViewSchedule& s, std::uint64_t rounds);
bool satisfies_lipschitz(const ViewSchedule& s, std::uint64_t rounds);

}  // namespace lazylight
