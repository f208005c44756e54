#include "lazylight/tournament.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "lazylight/error.hpp"

namespace lazylight {

std::vector<PartyId> order_by_size(Verifier& verifier, std::span<const PartyId> provers) {
  std::vector<std::pair<std::uint64_t, PartyId>> keyed;
  for (PartyId p : provers) keyed.emplace_back(verifier.get_size(p).value_or(0), p);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<PartyId> out;
  for (const auto& [size, p] : keyed) out.push_back(p);
  return out;
}

TournamentResult run_tournament(Verifier& verifier, std::span<const PartyId> provers) {
  if (provers.empty()) throw Error(ErrorCode::NoProvers, "tournament needs at least one prover");
  Network& net = verifier.network();
  const NetworkStats start = net.stats();

  std::map<PartyId, std::uint64_t> sizes;
  for (PartyId p : provers) sizes[p] = verifier.get_size(p).value_or(0);
  std::map<PartyId, Contender> contenders;
  auto contender = [&](PartyId p) -> const Contender& {
    auto it = contenders.find(p);
    if (it == contenders.end()) it = contenders.emplace(p, verifier.contender(p, sizes[p])).first;
    return it->second;
  };

  TournamentResult result;
  std::vector<PartyId> survivors{provers[0]};
  PartyId largest = provers[0];

  for (std::size_t i = 1; i < provers.size(); ++i) {
    const PartyId newcomer = provers[i];
    std::vector<PartyId> suppliers;
    for (PartyId p : provers) {
      if (p != newcomer) suppliers.push_back(p);
    }
    while (true) {
      const Contender& a = contender(largest);
      const Contender& b = contender(newcomer);
      if (verifier.claim_valid(a) && verifier.claim_valid(b) && a.claim->same_commitment(*b.claim)) {
        survivors.push_back(newcomer);
        ++result.merged;
        break;
      }
      const bool largest_challenges = sizes[largest] > sizes[newcomer];
      Outcome out = largest_challenges ? verifier.run_challenge_game(a, b, suppliers)
                                       : verifier.run_challenge_game(b, a, suppliers);
      ++result.games_played;
      result.total_rounds += out.exchanges;
      const Result r = out.result;
      const PartyId loser = out.loser();
      result.games.push_back(std::move(out));

      if (r == Result::NestedMMRs) {
        survivors.push_back(newcomer);
        break;
      }
      if (loser == newcomer) {
        result.eliminated.push_back(newcomer);
        break;
      }
      result.eliminated.push_back(largest);
      survivors.erase(std::find(survivors.begin(), survivors.end(), largest));
      if (survivors.empty()) {
        survivors.push_back(newcomer);
        largest = newcomer;
        break;
      }
      // Ties go to the survivor that appears first in the ordering.
      std::optional<PartyId> best;
      for (PartyId p : provers) {
        if (std::find(survivors.begin(), survivors.end(), p) == survivors.end()) continue;
        if (!best || sizes[p] > sizes[*best]) best = p;
      }
      largest = *best;
    }
  }

  result.winner = largest;
  const Contender& w = contender(largest);
  if (w.claim) result.claim = *w.claim;
  const NetworkStats& end = net.stats();
  result.network_rounds = end.rounds - start.rounds;
  result.total_bytes = end.bytes - start.bytes;
  result.sim_seconds = end.sim_seconds - start.sim_seconds;
  return result;
}

}  // namespace lazylight
