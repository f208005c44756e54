#include "lazylight/attack_demo.hpp"

#include <bit>
#include <map>

#include "lazylight/blocks.hpp"
#include "lazylight/consensus_oracle.hpp"
#include "lazylight/error.hpp"
#include "lazylight/execution.hpp"
#include "lazylight/oracle_backend.hpp"
#include "lazylight/prover.hpp"
#include "lazylight/tournament.hpp"

namespace lazylight {

namespace {

// Key layout: l_1 = 0, p_i = i, q_i = n + i.
Key p_key(std::uint64_t i) { return i; }
Key q_key(std::uint64_t n, std::uint64_t i) { return n + i; }

Transaction chain_tx(std::uint64_t n, std::uint64_t i) {
  return make_spend({p_key(i - 1), p_key(i)}, {UtxoOutput{q_key(n, i), 2}});
}

// Replays the naive SPV dispute: each side answers the other's last reveal
// with the earlier transaction that double-spends it, until none remains.
std::pair<std::uint64_t, bool> naive_spv(std::uint64_t n, const BlockStore& store, const DirtyLedger& txs) {
  std::map<Key, std::uint64_t> spender_of_p;  // p_k -> i > k that also spends it
  for (std::uint64_t i = 2; i <= n; ++i) spender_of_p[p_key(i - 1)] = i;

  std::uint64_t reveals = 0;
  std::uint64_t deepest = 1;  // tx_1 is the transaction in question
  while (true) {
    auto it = spender_of_p.find(p_key(deepest));
    if (it == spender_of_p.end()) break;
    const std::uint64_t next = it->second;
    const Transaction& tx = txs.at(n - next);
    const auto pos = store.position_of(tx);
    if (!pos) break;
    const Header& h = store.chain().headers.at(pos->block);
    if (!verify_inclusion(store.prove(*pos), h.tx_root, pos->index, block_leaf(tx), kBlockTreeArity)) break;
    ++reveals;
    deepest = next;
  }
  // The last revealed spender stands unchallenged; validity alternates back to tx_1.
  const bool tx1_valid = (deepest - 1) % 2 == 0;
  return {reveals, tx1_valid};
}

}  // namespace

std::uint64_t ceil_log(std::uint64_t x, unsigned m) {
  if (x == 0 || m < 2) throw Error(ErrorCode::InvalidParams, "ceil_log needs x >= 1 and m >= 2");
  std::uint64_t k = 0;
  std::uint64_t p = 1;
  while (p < x) {
    p = p > x / m ? x : p * m;
    ++k;
  }
  return k;
}

AttackReport run_attack_demo(std::uint64_t n, unsigned arity) {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "attack demo needs n >= 2");
  AttackReport report;
  report.n = n;
  report.arity = arity;

  const unsigned depth = std::max(16u, static_cast<unsigned>(std::bit_width(2 * n + 1)));
  Genesis genesis{depth, {}};
  for (std::uint64_t i = 0; i <= n; ++i) genesis.allocations.emplace_back(p_key(i), 1);
  DirtyLedger txs;
  for (std::uint64_t i = n; i >= 1; --i) txs.push_back(chain_tx(n, i));

  auto st0 = std::make_shared<SparseState>(genesis_state(genesis));
  auto entries = std::make_shared<std::vector<AugmentedEntry>>(augment(txs, *st0));
  auto store = std::make_shared<BlockStore>(txs, 16);
  const SparseState final_state = delta_star(*st0, txs);
  report.tx1_valid = final_state.get(q_key(n, 1)).has_value();

  auto [reveals, believed] = naive_spv(n, *store, txs);
  report.naive_reveals = reveals;
  report.naive_conclusion = believed;

  // The adversary agrees on every entry but flips tx_1's effect in the final state.
  SparseState before_last = delta_star(*st0, std::span<const Transaction>(txs).first(n - 1));
  SparseState lie = before_last;
  if (!report.tx1_valid) {
    const Transaction tx1 = chain_tx(n, 1);
    for (Key k : tx1.spend().inputs) lie.set(k, std::nullopt);
    lie.set(q_key(n, 1), 2);
  }
  auto forged = std::make_shared<std::vector<AugmentedEntry>>(*entries);
  forged->back().state = commit(lie);

  NetworkConfig config;
  config.arity = arity;
  Network net(config);
  GameTranscript transcript;
  net.set_transcript(&transcript);
  auto honest_data = make_prover_data(std::make_shared<VectorEntries>(entries), arity, st0, std::nullopt, store);
  auto forged_data = make_prover_data(std::make_shared<VectorEntries>(forged), arity, st0, std::nullopt, store);
  Prover adversary("adversary", CorruptLeaf{n, LeafField::State}, forged_data, 1);
  Prover honest("honest", Honest{}, honest_data, 2);
  const PartyId adv_id = net.add_party(&adversary);
  const PartyId honest_id = net.add_party(&honest);

  Verifier verifier(net, std::make_shared<ChainBackend>(store->chain(), depth), (*entries)[0].state);
  const std::vector<PartyId> provers{adv_id, honest_id};
  const TournamentResult result = run_tournament(verifier, order_by_size(verifier, provers));
  if (result.games.size() != 1) throw Error(ErrorCode::InvalidScenario, "attack demo expected exactly one game");
  report.game_messages = result.games.front().messages;
  report.game_exchanges = result.games.front().exchanges;
  report.message_bound = 4 * ceil_log(n + 1, arity) + 8;
  report.honest_won = result.winner == honest_id;
  if (auto reply = verifier.final_state_query(result.winner, result.claim, q_key(n, 1))) {
    report.tx1_output = reply->value;
  }
  return report;
}

}  // namespace lazylight
