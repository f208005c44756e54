#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lazylight/games.hpp"
#include "lazylight/ledger_gen.hpp"
#include "lazylight/prover.hpp"
#include "lazylight/simnet.hpp"
#include "lazylight/strategy.hpp"
#include "lazylight/tournament.hpp"

namespace lazylight {

struct ProverSpec {
  std::string id;
  Behavior behavior;
  bool random_index = false;  // CorruptLeaf index drawn from [1, L]
  std::uint64_t count = 1;
};

struct Scenario {
  std::string id = "scenario";
  NetworkConfig network;
  LedgerConfig ledger;
  std::vector<ProverSpec> provers;
};

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Provers, oracles and network for one scenario run. Honest provers hold the
/// augmented ledger over the first `ledger.length` transactions; the union
/// ledger extends it by the monologue cap so fabricated suffixes use real
/// transactions.
class World {
 public:
  static std::unique_ptr<World> build(const Scenario& scenario);

  World(const World&) = delete;
  World& operator=(const World&) = delete;

  Network& network() { return net_; }
  Verifier& verifier() { return *verifier_; }
  GameTranscript& transcript() { return transcript_; }
  const std::vector<PartyId>& ids() const { return ids_; }
  const Prover& prover(PartyId id) const { return *provers_.at(id - 1); }
  /// Entries held by an honest prover.
  std::uint64_t honest_length() const { return honest_length_; }
  const StateCommitment& genesis() const { return genesis_; }
  /// Winner is honest or shares an honest prover's commitment.
  bool honest_commitment(PartyId winner) const;
  std::vector<std::string> names() const;

 private:
  explicit World(const NetworkConfig& config) : net_(config) {}

  Network net_;
  GameTranscript transcript_;
  std::unique_ptr<Verifier> verifier_;
  std::vector<std::unique_ptr<Prover>> provers_;
  std::vector<PartyId> ids_;
  std::uint64_t honest_length_ = 0;
  StateCommitment genesis_;
};

struct ScenarioRun {
  TournamentResult tournament;
  std::string winner_name;
  bool honest_won = false;
  std::size_t n_provers = 0;
  std::uint64_t ledger_len = 0;
  unsigned arity = 2;
  std::vector<std::string> names;  // indexed by party id
  std::string transcript;          // JSON lines
};

ScenarioRun run_scenario(const Scenario& scenario);

std::string csv_header();
std::string csv_row(const Scenario& scenario, const ScenarioRun& run);
/// One row per game: scenario_id, game, challenger, responder, result, reason, j, exchanges, openings, messages, bytes.
std::string game_csv_header();
std::string game_csv_rows(const Scenario& scenario, const ScenarioRun& run);

}  // namespace lazylight
