// Acceptance gate: one PASS/FAIL line per criterion.
//   lazylight_acceptance [--criterion N] [--cli path/to/lazylight]

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "lazylight/analysis.hpp"
#include "lazylight/attack_demo.hpp"
#include "lazylight/error.hpp"
#include "lazylight/execution.hpp"
#include "lazylight/ledger_gen.hpp"
#include "lazylight/mmr.hpp"
#include "lazylight/scenario.hpp"

using namespace lazylight;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string g_cli;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string run_command(const std::string& cmd, int* status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    *status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  *status = pclose(pipe);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string scenario_path(const std::string& name) {
  return (std::filesystem::path(LAZYLIGHT_SCENARIO_DIR) / name).string();
}

Scenario stub_tournament(std::uint64_t length, unsigned m, std::uint64_t seed) {
  Scenario s;
  s.id = "stub_" + std::to_string(length);
  s.network.arity = m;
  s.network.seed = seed;
  s.ledger.length = length;
  s.ledger.seed = seed;
  s.ledger.model = LedgerModel::Stub;
  ProverSpec adversary{"adversary", CorruptLeaf{0, LeafField::State}, true, 16};
  s.provers = {adversary, ProverSpec{"honest", Honest{}, false, 1}};
  return s;
}

Scenario pair_scenario(LedgerModel model, std::uint64_t txs, unsigned m, std::uint64_t seed, Behavior first,
                       Behavior second) {
  Scenario s;
  s.id = "pair";
  s.network.arity = m;
  s.network.seed = seed;
  s.ledger.model = model;
  s.ledger.length = txs;
  s.ledger.seed = seed;
  s.ledger.smt_depth = 16;
  s.ledger.accounts = 16;
  s.ledger.block_size = 8;
  s.provers = {ProverSpec{"a", first, false, 1}, ProverSpec{"b", second, false, 1}};
  return s;
}

Outcome play(World& w, PartyId challenger, PartyId responder) {
  Verifier& v = w.verifier();
  const std::vector<PartyId> others;
  return v.run_challenge_game(v.contender(challenger), v.contender(responder), others);
}

// 1 -------------------------------------------------------------------------
Verdict criterion_optimal_degree() {
  const auto t0 = Clock::now();
  std::uint64_t m = 0;
  std::string how;
  if (!g_cli.empty()) {
    int status = 0;
    const std::string out =
        run_command(g_cli + " optimal-degree --delta-ms 13 --bandwidth-mbps 290 --hash-bits 256", &status);
    if (status != 0) return {false, "cli exited with status " + std::to_string(status)};
    m = std::stoull(out.substr(0, out.find('\n')));
    how = "cli";
  } else {
    m = optimal_degree(LinkParams{0.013, 290e6, 256});
    how = "library";
  }
  const double dt = seconds_since(t0);
  const bool ok = (m >= 7441 && m <= 7443) && dt < 1.0;
  return {ok, how + " m=" + std::to_string(m) + " in " + std::to_string(dt) + " s"};
}

// 2 -------------------------------------------------------------------------
Verdict criterion_round_counts() {
  const auto t0 = Clock::now();
  const Scenario s = load_scenario(scenario_path("seventeen_stub.json"));
  const ScenarioRun run = run_scenario(s);
  const double dt = seconds_since(t0);
  std::uint64_t max_ex = 0;
  for (const auto& g : run.tournament.games) max_ex = std::max(max_ex, g.exchanges);
  const bool ok = run.n_provers == 17 && s.ledger.length == 10'000'000 && s.network.arity == 300 &&
                  run.tournament.games_played == 16 && max_ex <= 4 && run.honest_won && dt < 60.0;
  std::ostringstream d;
  d << "games=" << run.tournament.games_played << " max_exchanges=" << max_ex << " honest_won=" << run.honest_won
    << " runtime=" << dt << " s";
  return {ok, d.str()};
}

// 3 -------------------------------------------------------------------------
Verdict criterion_log_scaling() {
  std::ostringstream d;
  std::ostringstream bad;
  bool ok = true;
  for (std::uint64_t L : {1'000ULL, 10'000ULL, 100'000ULL, 1'000'000ULL, 10'000'000ULL}) {
    const ScenarioRun run = run_scenario(stub_tournament(L, 300, 5));
    std::uint64_t max_ex = 0;
    for (const auto& g : run.tournament.games) max_ex = std::max(max_ex, g.exchanges);
    const std::uint64_t expected = ceil_log(L, 300) + 1;
    d << " L=" << L << ":" << max_ex << "/" << expected;
    if (max_ex != expected) {
      ok = false;
      bad << " L=" << L << " (max " << max_ex << ", expected " << expected << ")";
    }
  }
  if (!ok) d << "; mismatches:" << bad.str();
  return {ok, "max/expected" + d.str()};
}

// 4 -------------------------------------------------------------------------
Verdict criterion_pinpointing() {
  const auto t0 = Clock::now();
  std::uint64_t cases = 0;
  std::uint64_t hits = 0;
  std::string first_miss;
  for (unsigned m : {2u, 4u}) {
    for (std::uint64_t len = 2; len <= 64; ++len) {
      for (std::uint64_t pos = 0; pos < len; ++pos) {
        const LeafField field = pos % 2 == 0 ? LeafField::State : LeafField::Tx;
        const Scenario s = pair_scenario(LedgerModel::Account, len - 1, m, len * 131 + pos, Honest{},
                                         CorruptLeaf{pos, field});
        auto w = World::build(s);
        const PartyId honest = w->ids()[0];
        const PartyId liar = w->ids()[1];
        const Outcome out = play(*w, honest, liar);
        ++cases;
        const EntrySource& truth = *w->prover(honest).data().entries;
        const EntrySource& lie = *w->prover(liar).data().entries;
        std::uint64_t first = 0;
        while (first < len && truth.at(first) == lie.at(first)) ++first;
        bool ok = out.result == Result::ChallengerWins && out.pinpoint && out.pinpoint->j == first;
        if (ok && first > 0) ok = out.pinpoint->prev && *out.pinpoint->prev == truth.at(first - 1);
        if (ok) {
          ++hits;
        } else if (first_miss.empty()) {
          first_miss = " first miss: m=" + std::to_string(m) + " len=" + std::to_string(len) +
                       " pos=" + std::to_string(pos) + " reason=" + std::string(to_string(out.reason));
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << hits << "/" << cases << " pinpoints match in " << dt << " s" << first_miss;
  return {hits == cases && cases >= 4000 && dt < 300.0, d.str()};
}

// 5 -------------------------------------------------------------------------
std::uint64_t first_fork_height(const Scenario& s) {
  auto w = World::build(s);
  const ProverData& honest = w->prover(w->ids()[0]).data();
  const ProverData& adv = w->prover(w->ids()[1]).data();
  std::uint64_t j = 0;
  while (honest.mmr.leaf(j) == adv.mmr.leaf(j)) ++j;
  const auto loc = honest.mmr.locate(j);
  return honest.mmr.trees()[loc.tree].height();
}

Verdict criterion_catalog() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240607);
  const std::array<unsigned, 4> arities{2, 3, 4, 16};
  std::uint64_t games = 0;
  std::uint64_t good = 0;
  std::string first_miss;
  for (int strategy = 0; strategy < 8; ++strategy) {
    for (int fixture = 0; fixture < 200; ++fixture) {
      const std::uint64_t seed = rng();
      const LedgerModel model = fixture % 2 == 0 ? LedgerModel::Account : LedgerModel::Utxo;
      const unsigned m = arities[uniform_below(rng, arities.size())];
      Scenario base = pair_scenario(model, 0, m, seed, Honest{}, Honest{});
      base.network.alpha = 1 + uniform_below(rng, 3);
      base.network.u = 1 + uniform_below(rng, 3);
      base.network.nu = uniform_below(rng, 3);
      const std::uint64_t cap = base.network.monologue_cap();
      base.ledger.length = cap + 8 + uniform_below(rng, 100);
      const std::uint64_t n = base.ledger.length + 1;
      Role role = uniform_below(rng, 2) == 0 ? Role::Challenger : Role::Responder;
      Behavior b;
      switch (strategy) {
        case 0:
          b = CorruptLeaf{uniform_below(rng, n), uniform_below(rng, 2) == 0 ? LeafField::Tx : LeafField::State};
          break;
        case 1:
          b = TruncatedLedger{cap + uniform_below(rng, std::min<std::uint64_t>(n - cap, 2 * cap + 1))};
          role = Role::Responder;
          break;
        case 2:
          b = FabricatedSuffix{uniform_below(rng, cap)};
          role = Role::Challenger;
          break;
        case 3:
        case 4: {
          Scenario probe = base;
          probe.provers[1].behavior = Staller{1};
          const std::uint64_t h = first_fork_height(probe);
          if (strategy == 3) {
            b = Staller{static_cast<std::uint32_t>(1 + uniform_below(rng, h + 1))};
          } else {
            if (h == 0) role = Role::Challenger;
            b = GarbageChildren{static_cast<std::uint32_t>(1 + uniform_below(rng, std::max<std::uint64_t>(h, 1)))};
          }
          break;
        }
        case 5: b = WrongClaimProof{}; break;
        case 6: b = EquivocatingSizes{}; break;
        default:
          b = InvalidQueryChallenger{};
          role = Role::Challenger;
          break;
      }
      Scenario s = base;
      s.provers[1].behavior = b;
      auto w = World::build(s);
      const PartyId honest = w->ids()[0];
      const PartyId adv = w->ids()[1];
      Outcome out;
      try {
        out = role == Role::Challenger ? play(*w, adv, honest) : play(*w, honest, adv);
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (" + behavior_name(b) + ", cap " + std::to_string(cap) + ")");
      }
      ++games;
      const bool ok = out.result != Result::NestedMMRs && out.loser() == adv && out.reason == documented_reason(b, role);
      if (ok) {
        ++good;
      } else if (first_miss.empty()) {
        first_miss = " first miss: " + behavior_name(b) + (role == Role::Challenger ? " as challenger" : " as responder") +
                     " got " + std::string(to_string(out.result)) + "/" + std::string(to_string(out.reason)) +
                     " expected " + std::string(to_string(documented_reason(b, role)));
      }
    }
  }
  std::ostringstream d;
  d << good << "/" << games << " games won by the honest party by the documented condition in "
    << seconds_since(t0) << " s" << first_miss;
  return {good == games && games == 1600, d.str()};
}

// 6 -------------------------------------------------------------------------
Verdict criterion_tournament_bound() {
  std::mt19937_64 rng(77);
  std::uint64_t runs = 0;
  std::uint64_t within = 0;
  std::uint64_t honest = 0;
  std::ostringstream peaks;
  for (std::uint64_t n = 2; n <= 12; ++n) {
    std::uint64_t max_games = 0;
    for (int trial = 0; trial < 12; ++trial) {
      Scenario s;
      s.id = "bound";
      s.network.arity = 2 + static_cast<unsigned>(uniform_below(rng, 3));
      s.network.alpha = 2;
      s.network.u = 2;
      s.network.nu = 1;
      s.network.seed = rng();
      s.ledger.length = 40 + uniform_below(rng, 40);
      s.ledger.seed = rng();
      s.ledger.smt_depth = 16;
      s.ledger.accounts = 16;
      s.ledger.block_size = 8;
      const std::uint64_t cap = s.network.monologue_cap();
      // Longer forged claims sort ahead of the honest prover and each must be
      // knocked out in turn; the rest mix shorter and equal-length liars.
      const std::uint64_t longer = uniform_below(rng, n);
      for (std::uint64_t k = 0; k < n - 1; ++k) {
        Behavior b;
        if (k < longer) {
          b = FabricatedSuffix{uniform_below(rng, cap)};
        } else if (k % 3 == 0) {
          b = HonestLag{1 + uniform_below(rng, s.network.alpha * s.network.u - 1)};
        } else if (k % 3 == 1) {
          b = TruncatedLedger{cap + uniform_below(rng, 5)};
        } else {
          b = CorruptLeaf{1 + uniform_below(rng, s.ledger.length), LeafField::State};
        }
        s.provers.push_back(ProverSpec{"p" + std::to_string(k), b, false, 1});
      }
      s.provers.push_back(ProverSpec{"honest", Honest{}, false, 1});
      const ScenarioRun run = run_scenario(s);
      ++runs;
      if (run.tournament.games_played <= 2 * n - 1) ++within;
      if (run.honest_won) ++honest;
      max_games = std::max(max_games, run.tournament.games_played);
    }
    peaks << " n=" << n << ":" << max_games << "<=" << 2 * n - 1;
  }
  std::ostringstream d;
  d << within << "/" << runs << " runs within 2n-1, honest commitment won " << honest << "/" << runs << ";"
    << peaks.str();
  return {within == runs && honest == runs, d.str()};
}

// 7 -------------------------------------------------------------------------
Verdict criterion_monologue_cap() {
  std::mt19937_64 rng(4242);
  std::uint64_t fixtures = 0;
  std::uint64_t good = 0;
  std::string first_miss;
  for (int i = 0; i < 100; ++i) {
    Scenario s = pair_scenario(i % 2 == 0 ? LedgerModel::Account : LedgerModel::Utxo, 0, 2 + (i % 3), rng(),
                               Honest{}, Honest{});
    s.network.alpha = 1 + uniform_below(rng, 4);
    s.network.u = 1 + uniform_below(rng, 4);
    s.network.nu = uniform_below(rng, 3);
    const std::uint64_t cap = s.network.monologue_cap();
    const std::uint64_t au = s.network.alpha * s.network.u;
    s.ledger.length = 3 * cap + 10 + uniform_below(rng, 50);
    const bool truncated = i < 50;
    std::uint64_t gap = 0;
    if (truncated) {
      gap = cap + uniform_below(rng, cap + 1);
      s.provers[1].behavior = TruncatedLedger{gap};
    } else {
      if (au < 2) s.network.u += 1;
      const std::uint64_t limit = s.network.alpha * s.network.u;
      gap = 1 + uniform_below(rng, limit - 1);
      s.provers[1].behavior = HonestLag{gap};
    }
    auto w = World::build(s);
    const Outcome out = play(*w, w->ids()[0], w->ids()[1]);
    ++fixtures;
    const bool ok = truncated ? (out.result == Result::ChallengerWins && out.reason == Reason::ResponderTooShort &&
                                 out.suffix_entries == s.network.monologue_cap())
                              : (out.result == Result::NestedMMRs && out.suffix_entries == gap);
    if (ok) {
      ++good;
    } else if (first_miss.empty()) {
      first_miss = " first miss: fixture " + std::to_string(i) + " " + std::string(to_string(out.reason));
    }
  }
  std::ostringstream d;
  d << good << "/" << fixtures << " fixtures (50 truncated at the cap, 50 lagging honest)" << first_miss;
  return {good == fixtures, d.str()};
}

// 8 -------------------------------------------------------------------------
Verdict criterion_mmr_equivalence() {
  const auto t0 = Clock::now();
  std::uint64_t checked = 0;
  std::uint64_t equal = 0;
  for (unsigned m : {2u, 3u, 4u, 16u}) {
    std::vector<Bytes> leaves;
    std::optional<MountainRange> incremental;
    for (std::uint64_t len = 1; len <= 256; ++len) {
      Bytes leaf = Encoder().u64(len * 0x9e3779b97f4a7c15ULL).take();
      leaves.push_back(leaf);
      incremental = incremental ? incremental->append(leaf) : MountainRange::build(leaves, m);
      const MountainRange batch = MountainRange::build(leaves, m);
      ++checked;
      if (incremental->peaks() == batch.peaks() && incremental->size() == len) ++equal;
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << equal << "/" << checked << " lengths agree in " << dt << " s";
  return {equal == checked && dt < 30.0, d.str()};
}

// 9 -------------------------------------------------------------------------
SparseState random_state(std::mt19937_64& rng, unsigned depth, std::uint64_t keys) {
  SparseState st(depth);
  for (std::uint64_t i = 0; i < keys; ++i) {
    st.set(uniform_below(rng, std::uint64_t{1} << depth), 1 + uniform_below(rng, 1000));
  }
  return st;
}

Key pick_key(std::mt19937_64& rng, const SparseState& st, unsigned depth) {
  if (!st.leaves().empty() && uniform_below(rng, 4) != 0) {
    auto it = st.leaves().begin();
    std::advance(it, static_cast<long>(uniform_below(rng, st.leaves().size())));
    return it->first;
  }
  return uniform_below(rng, std::uint64_t{1} << depth);
}

Transaction random_tx(std::mt19937_64& rng, const SparseState& st, unsigned depth, bool utxo) {
  if (!utxo) {
    return make_transfer(pick_key(rng, st, depth), pick_key(rng, st, depth), uniform_below(rng, 1200),
                         uniform_below(rng, 1u << 30));
  }
  std::vector<Key> inputs;
  const std::uint64_t n_in = 1 + uniform_below(rng, 4);
  for (std::uint64_t i = 0; i < n_in; ++i) inputs.push_back(pick_key(rng, st, depth));
  std::vector<UtxoOutput> outputs;
  const std::uint64_t n_out = uniform_below(rng, 4);
  for (std::uint64_t i = 0; i < n_out; ++i) {
    outputs.push_back(UtxoOutput{uniform_below(rng, std::uint64_t{1} << depth), uniform_below(rng, 600)});
  }
  return make_spend(std::move(inputs), std::move(outputs));
}

Verdict criterion_exec_completeness() {
  std::mt19937_64 rng(99);
  std::ostringstream d;
  bool all = true;
  for (bool utxo : {false, true}) {
    std::uint64_t good = 0;
    std::uint64_t valid = 0;
    for (int i = 0; i < 1000; ++i) {
      const unsigned depth = 8 + static_cast<unsigned>(uniform_below(rng, 25));
      const SparseState st = random_state(rng, depth, 1 + uniform_below(rng, 40));
      const Transaction tx = random_tx(rng, st, depth, utxo);
      const auto got = succinct_delta(commit(st), tx, make_witness(st, tx), depth);
      const StateCommitment want = commit(delta(st, tx));
      if (got && *got == want) ++good;
      if (is_valid(st, tx)) ++valid;
    }
    all = all && good == 1000;
    d << (utxo ? " utxo " : "account ") << good << "/1000 (" << valid << " valid)";
  }
  return {all, d.str()};
}

// 10 ------------------------------------------------------------------------
Verdict criterion_attack_demo() {
  std::ostringstream d;
  bool ok = true;
  for (unsigned m : {2u, 16u}) {
    const AttackReport r = run_attack_demo(1000, m);
    const bool pass = r.naive_reveals >= 500 && r.game_messages <= r.message_bound && r.honest_won &&
                      r.message_bound == 4 * ceil_log(1001, m) + 8 && !r.tx1_valid && !r.tx1_output;
    ok = ok && pass;
    d << " m=" << m << ": naive_reveals=" << r.naive_reveals << " game_messages=" << r.game_messages
      << " bound=" << r.message_bound;
  }
  return {ok, "n=1000" + d.str()};
}

// 11 ------------------------------------------------------------------------
Verdict criterion_determinism() {
  std::ostringstream d;
  bool ok = true;
  for (const char* name : {"small_account.json", "utxo_catalog.json", "all_honest.json"}) {
    const Scenario s = load_scenario(scenario_path(name));
    const ScenarioRun a = run_scenario(s);
    const ScenarioRun b = run_scenario(s);
    const bool same = a.transcript == b.transcript && csv_row(s, a) == csv_row(s, b) &&
                      game_csv_rows(s, a) == game_csv_rows(s, b) && !a.transcript.empty();
    ok = ok && same;
    d << " " << name << (same ? ":same" : ":DIFFERENT");
  }
  if (!g_cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / ("lazylight_acc_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::array<std::string, 2> csv;
    std::array<std::string, 2> transcript;
    for (int k = 0; k < 2; ++k) {
      const auto c = dir / ("run" + std::to_string(k) + ".csv");
      const auto t = dir / ("run" + std::to_string(k) + ".jsonl");
      int status = 0;
      run_command(g_cli + " tournament " + scenario_path("small_account.json") + " --csv " + c.string() +
                      " --transcript " + t.string(),
                  &status);
      csv[k] = slurp(c);
      transcript[k] = slurp(t);
    }
    std::filesystem::remove_all(dir);
    const bool same = csv[0] == csv[1] && transcript[0] == transcript[1] && !csv[0].empty() && !transcript[0].empty();
    ok = ok && same;
    d << " cli:" << (same ? "same" : "DIFFERENT");
  }
  return {ok, d.str()};
}

const std::vector<std::pair<const char*, std::function<Verdict()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Verdict()>>> list{
      {"optimal degree", criterion_optimal_degree},
      {"round counts", criterion_round_counts},
      {"logarithmic scaling", criterion_log_scaling},
      {"pinpointing oracle equivalence", criterion_pinpointing},
      {"completeness and soundness", criterion_catalog},
      {"tournament bound", criterion_tournament_bound},
      {"monologue cap", criterion_monologue_cap},
      {"mmr incremental/batch equivalence", criterion_mmr_equivalence},
      {"execution oracle completeness", criterion_exec_completeness},
      {"attack demo", criterion_attack_demo},
      {"determinism", criterion_determinism},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--cli" && i + 1 < argc) {
      g_cli = argv[++i];
    } else {
      std::cerr << "usage: lazylight_acceptance [--criterion N] [--cli PATH]\n";
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria().size())) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Verdict v;
    try {
      v = criteria()[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria()[i].first
              << "): " << v.detail << std::endl;
  }
  return all ? 0 : 1;
}
