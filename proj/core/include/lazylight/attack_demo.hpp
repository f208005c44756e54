#pragma once

#include <cstdint>
#include <optional>

namespace lazylight {

/// Reverse-ordered UTXO chain tx_n ... tx_1 where tx_i spends the output
/// tx_{i-1} also spends, so the validity of tx_1 alternates with n.
struct AttackReport {
  std::uint64_t n = 0;
  unsigned arity = 2;
  bool tx1_valid = false;            // under full execution
  std::uint64_t naive_reveals = 0;   // inclusion-proven reveals before the SPV dispute settles
  bool naive_conclusion = false;     // what the SPV client believes about tx_1 at the end
  std::uint64_t game_messages = 0;   // messages in the single challenge game
  std::uint64_t game_exchanges = 0;
  std::uint64_t message_bound = 0;   // 4 * ceil(log_m(n + 1)) + 8
  bool honest_won = false;
  std::optional<std::uint64_t> tx1_output;  // queried from the winning commitment
};

AttackReport run_attack_demo(std::uint64_t n, unsigned arity);

/// ceil(log_m(x)) for x >= 1, computed exactly on integers.
std::uint64_t ceil_log(std::uint64_t x, unsigned m);

}  // namespace lazylight
