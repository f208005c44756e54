#include "lazylight/analysis.hpp"

#include <bit>
#include <cmath>

#include "lazylight/error.hpp"

namespace lazylight {

namespace {

void check(const LinkParams& link) {
  if (!(link.delta > 0) || !(link.bandwidth > 0) || link.hash_bits == 0) {
    throw Error(ErrorCode::InvalidParams, "delay, bandwidth and hash size must be positive");
  }
}

double lhs(double m) { return m * (std::log(m) - 1.0); }

}  // namespace

double game_duration(double ledger_size, double m, const LinkParams& link) {
  check(link);
  if (!(ledger_size >= 2) || !(m >= 2)) throw Error(ErrorCode::InvalidParams, "need L >= 2 and m >= 2");
  const double log_l = std::log(ledger_size);
  const double h = static_cast<double>(link.hash_bits);
  return (log_l / std::log(m)) * (4.0 * link.delta + m * h / link.bandwidth) + log_l / link.bandwidth;
}

double optimal_degree_real(const LinkParams& link) {
  check(link);
  const double rhs = 4.0 * link.delta * link.bandwidth / static_cast<double>(link.hash_bits);
  double lo = 3.0;
  double hi = std::ldexp(1.0, 40);
  if (lhs(lo) >= rhs) return lo;
  if (lhs(hi) <= rhs) return hi;
  while ((hi - lo) > 1e-12 * lo) {
    const double mid = lo + (hi - lo) / 2;
    if (lhs(mid) < rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

std::uint64_t optimal_degree(const LinkParams& link, double ledger_size) {
  const double m = optimal_degree_real(link);
  auto lo = static_cast<std::uint64_t>(std::floor(m));
  auto hi = static_cast<std::uint64_t>(std::ceil(m));
  // Near the lower end of the range the integer optimum may sit at 2.
  if (m <= 3.0) lo = 2;
  if (lo == hi) return lo;
  const double d_lo = game_duration(ledger_size, static_cast<double>(lo), link);
  const double d_hi = game_duration(ledger_size, static_cast<double>(hi), link);
  return d_hi < d_lo ? hi : lo;
}

double exchange_seconds(unsigned m, const LinkParams& link) {
  check(link);
  const auto log_m = static_cast<double>(std::bit_width(static_cast<unsigned>(m - 1)));
  return 4.0 * link.delta + (static_cast<double>(m) * link.hash_bits + log_m) / link.bandwidth;
}

}  // namespace lazylight
