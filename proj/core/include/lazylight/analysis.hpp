#pragma once

#include <cstdint>

namespace lazylight {

/// Latency and bandwidth of one verifier-mediated link.
struct LinkParams {
  double delta = 0.013;      // seconds
  double bandwidth = 290e6;  // bits per second
  unsigned hash_bits = 256;
};

/// Estimated bisection duration in seconds over a ledger of size L with
/// m-ary trees: (ln L / ln m)(4Δ + mH/C) + ln L / C.
double game_duration(double ledger_size, double m, const LinkParams& link);

/// Real root of m(ln m − 1) = 4ΔC/H, found by bisection on [3, 2^40].
double optimal_degree_real(const LinkParams& link);

/// The neighbouring integer of optimal_degree_real with the smaller duration.
std::uint64_t optimal_degree(const LinkParams& link, double ledger_size = 1.5e9);

/// Per-exchange cost 4Δ + (mH + ⌈log2 m⌉)/C.
double exchange_seconds(unsigned m, const LinkParams& link);

}  // namespace lazylight
