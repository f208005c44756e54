#include "lazylight/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "lazylight/error.hpp"
#include "lazylight/execution.hpp"
#include "lazylight/oracle_backend.hpp"

namespace lazylight {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidScenario, what); }

template <class T>
T field(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("bad value for ") + key);
  }
}

ProverSpec parse_prover(const json& j, std::size_t position) {
  if (!j.is_object()) bad("prover entries must be objects");
  ProverSpec spec;
  spec.id = field<std::string>(j, "id", "p" + std::to_string(position));
  spec.count = field<std::uint64_t>(j, "count", 1);
  if (spec.count == 0) bad("prover count must be positive");
  const std::string strategy = field<std::string>(j, "strategy", "honest");
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (!params.is_object()) bad("params must be an object");

  if (strategy == "honest") {
    spec.behavior = Honest{};
  } else if (strategy == "honest_lag") {
    spec.behavior = HonestLag{field<std::uint64_t>(params, "lag", 1)};
  } else if (strategy == "corrupt_leaf") {
    CorruptLeaf c;
    if (params.contains("index") && params.at("index").is_string()) {
      if (params.at("index").get<std::string>() != "random") bad("corrupt_leaf index must be a number or \"random\"");
      spec.random_index = true;
    } else {
      c.index = field<std::uint64_t>(params, "index", 1);
    }
    const std::string f = field<std::string>(params, "field", "state");
    if (f == "state") {
      c.field = LeafField::State;
    } else if (f == "tx") {
      c.field = LeafField::Tx;
    } else {
      bad("corrupt_leaf field must be tx or state");
    }
    spec.behavior = c;
  } else if (strategy == "truncated_ledger") {
    spec.behavior = TruncatedLedger{field<std::uint64_t>(params, "k", 1)};
  } else if (strategy == "fabricated_suffix") {
    spec.behavior = FabricatedSuffix{field<std::uint64_t>(params, "bad_at", 0)};
  } else if (strategy == "staller") {
    spec.behavior = Staller{field<std::uint32_t>(params, "depth", 1)};
  } else if (strategy == "garbage_children") {
    spec.behavior = GarbageChildren{field<std::uint32_t>(params, "depth", 1)};
  } else if (strategy == "wrong_claim_proof") {
    spec.behavior = WrongClaimProof{};
  } else if (strategy == "equivocating_sizes") {
    spec.behavior = EquivocatingSizes{};
  } else if (strategy == "invalid_query_challenger") {
    spec.behavior = InvalidQueryChallenger{};
  } else {
    bad("unknown strategy " + strategy);
  }
  return spec;
}

Digest perturb(Digest d) {
  d.bytes[0] ^= 0x01;
  return d;
}

Transaction fabricated_tx(std::uint64_t index) {
  return make_transfer(1, 2, 1, (std::uint64_t{1} << 62) + index);
}

constexpr Key kMintKey = 1;

// Everything one fork needs: which leaf first differs and how long the ledger is.
struct ForkPlan {
  std::uint64_t index = 0;
  LeafField field = LeafField::State;
  std::uint64_t length = 0;
};

class Builder {
 public:
  Builder(const Scenario& s, unsigned arity) : s_(s), arity_(arity) {}

  void prepare() {
    const std::uint64_t n = s_.ledger.length + 1;
    extension_ = s_.network.monologue_cap();
    if (s_.ledger.model == LedgerModel::Stub) {
      canonical_ = std::make_shared<SyntheticEntries>(s_.ledger.seed, n + extension_);
      auto honest_src = std::make_shared<SyntheticEntries>(s_.ledger.seed, n);
      column_ = leaf_digest_column(*honest_src);
      honest_ = std::make_shared<ProverData>(
          ProverData{honest_src, MountainRange::from_leaf_digests(column_, arity_), nullptr, std::nullopt, nullptr});
      backend_ = std::make_shared<StubBackend>(canonical_);
      genesis_ = honest_src->at(0).state;
      return;
    }
    LedgerConfig cfg = s_.ledger;
    cfg.length = s_.ledger.length + extension_;
    gen_ = generate_ledger(cfg);
    st0_ = std::make_shared<SparseState>(genesis_state(gen_.genesis));
    full_ = std::make_shared<std::vector<AugmentedEntry>>(augment(gen_.txs, *st0_));
    store_ = std::make_shared<BlockStore>(gen_.txs, s_.ledger.block_size);
    backend_ = std::make_shared<ChainBackend>(store_->chain(), s_.ledger.smt_depth);
    auto honest_src = std::make_shared<VectorEntries>(full_, n);
    column_ = leaf_digest_column(*honest_src);
    honest_ = std::make_shared<ProverData>(ProverData{honest_src, MountainRange::from_leaf_digests(column_, arity_),
                                                      st0_, std::nullopt, store_});
    genesis_ = (*full_)[0].state;
  }

  std::uint64_t honest_length() const { return honest_->length(); }
  std::uint64_t extension() const { return extension_; }
  const StateCommitment& genesis() const { return genesis_; }
  std::shared_ptr<const OracleBackend> backend() const { return backend_; }
  std::shared_ptr<const ProverData> honest() const { return honest_; }

  std::shared_ptr<const ProverData> prefix(std::uint64_t length) const {
    if (length == 0 || length > honest_length()) bad("prefix length out of range");
    if (length == honest_length()) return honest_;
    std::shared_ptr<const EntrySource> src;
    if (canonical_) {
      src = std::make_shared<SyntheticEntries>(s_.ledger.seed, length);
    } else {
      src = std::make_shared<VectorEntries>(full_, length);
    }
    return std::make_shared<ProverData>(ProverData{
        src, MountainRange::from_leaf_digests(column_.slice(0, length), arity_), st0_, std::nullopt, store_});
  }

  std::shared_ptr<const ProverData> fork(const ForkPlan& plan) const {
    if (plan.index >= plan.length) bad("fork index beyond the fork length");
    return canonical_ ? stub_fork(plan) : real_fork(plan);
  }

 private:
  std::shared_ptr<const ProverData> stub_fork(const ForkPlan& plan) const {
    AugmentedEntry e = canonical_->at(plan.index);
    if (plan.field == LeafField::State) {
      e.state.digest = perturb(e.state.digest);
    } else if (e.tx) {
      AccountTransfer t = e.tx->transfer();
      t.amount += 1;
      e.tx = make_transfer(t.from, t.to, t.amount, t.nonce);
    } else {
      e.tx = fabricated_tx(0);
    }
    auto src = std::make_shared<PatchedEntries>(canonical_, plan.length,
                                                std::map<std::uint64_t, AugmentedEntry>{{plan.index, e}});
    MountainRange mmr = honest_->mmr;
    if (plan.length < mmr.size()) mmr = MountainRange::from_leaf_digests(column_.slice(0, plan.length), arity_);
    for (std::uint64_t i = mmr.size(); i < plan.length; ++i) mmr = mmr.append_digest(entry_leaf_digest(canonical_->at(i)));
    mmr = mmr.with_leaf_digest(plan.index, entry_leaf_digest(e));
    return std::make_shared<ProverData>(ProverData{src, std::move(mmr), nullptr, std::nullopt, nullptr});
  }

  std::shared_ptr<const ProverData> real_fork(const ForkPlan& plan) const {
    auto entries = std::make_shared<std::vector<AugmentedEntry>>();
    entries->reserve(plan.length);
    std::optional<Mint> mint;
    if (plan.field == LeafField::State) mint = Mint{plan.index, kMintKey, 1};
    SparseState st = *st0_;
    for (std::uint64_t k = 0; k < plan.length; ++k) {
      std::optional<Transaction> tx = (*full_)[k].tx;
      if (k == plan.index && plan.field == LeafField::Tx) tx = fabricated_tx(k);
      if (k > 0) apply(st, *tx);
      if (mint && mint->index == k) st.set(kMintKey, st.get(kMintKey).value_or(0) + mint->amount);
      entries->push_back(AugmentedEntry{tx, commit(st)});
    }
    auto src = std::make_shared<VectorEntries>(entries);
    return std::make_shared<ProverData>(ProverData{
        src, MountainRange::from_leaf_digests(leaf_digest_column(*src), arity_), st0_, mint, store_});
  }

  const Scenario& s_;
  unsigned arity_;
  std::uint64_t extension_ = 0;
  std::shared_ptr<const EntrySource> canonical_;
  DigestColumn column_;
  std::shared_ptr<const ProverData> honest_;
  std::shared_ptr<const OracleBackend> backend_;
  StateCommitment genesis_;
  GeneratedLedger gen_;
  std::shared_ptr<const SparseState> st0_;
  std::shared_ptr<const std::vector<AugmentedEntry>> full_;
  std::shared_ptr<const BlockStore> store_;
};

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) bad("scenario must be a JSON object");
  Scenario s;
  s.id = field<std::string>(root, "id", s.id);

  const json net = root.contains("network") ? root.at("network") : json::object();
  s.network.delta = field<double>(net, "delta_ms", s.network.delta * 1e3) / 1e3;
  s.network.bandwidth = field<double>(net, "bandwidth_mbps", s.network.bandwidth / 1e6) * 1e6;
  s.network.arity = field<unsigned>(net, "arity", s.network.arity);
  s.network.alpha = field<std::uint64_t>(net, "alpha", s.network.alpha);
  s.network.u = field<std::uint64_t>(net, "u", s.network.u);
  s.network.nu = field<std::uint64_t>(net, "nu", s.network.nu);
  s.network.seed = field<std::uint64_t>(net, "seed", s.network.seed);
  try {
    s.network.validate();
  } catch (const Error& e) {
    bad(e.what());
  }

  const json led = root.contains("ledger") ? root.at("ledger") : json::object();
  s.ledger.length = field<std::uint64_t>(led, "length", s.ledger.length);
  s.ledger.invalid_fraction = field<double>(led, "invalid_fraction", s.ledger.invalid_fraction);
  s.ledger.conflict_fraction = field<double>(led, "conflict_fraction", s.ledger.conflict_fraction);
  s.ledger.seed = field<std::uint64_t>(led, "seed", s.ledger.seed);
  try {
    s.ledger.model = parse_ledger_model(field<std::string>(led, "model", std::string(to_string(s.ledger.model))));
  } catch (const Error& e) {
    bad(e.what());
  }
  s.ledger.block_size = field<std::size_t>(led, "block_size", s.ledger.block_size);
  s.ledger.smt_depth = field<unsigned>(led, "smt_depth", s.ledger.smt_depth);
  s.ledger.accounts = field<std::uint64_t>(led, "accounts", s.ledger.accounts);
  if (s.ledger.length == 0) bad("ledger length must be positive");
  if (s.ledger.block_size == 0) bad("block_size must be positive");

  if (!root.contains("provers") || !root.at("provers").is_array() || root.at("provers").empty()) {
    bad("scenario needs a non-empty provers array");
  }
  std::size_t position = 0;
  for (const auto& p : root.at("provers")) s.provers.push_back(parse_prover(p, position++));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::unique_ptr<World> World::build(const Scenario& scenario) {
  std::unique_ptr<World> world(new World(scenario.network));
  Builder b(scenario, scenario.network.arity);
  b.prepare();
  world->honest_length_ = b.honest_length();
  world->genesis_ = b.genesis();
  world->verifier_ = std::make_unique<Verifier>(world->net_, b.backend(), b.genesis());
  world->net_.set_transcript(&world->transcript_);

  const std::uint64_t n = b.honest_length();
  std::mt19937_64 rng(mix64(scenario.network.seed ^ mix64(scenario.ledger.seed)));
  auto random_fork_index = [&] { return 1 + uniform_below(rng, n - 1); };

  for (const auto& spec : scenario.provers) {
    for (std::uint64_t copy = 0; copy < spec.count; ++copy) {
      Behavior behavior = spec.behavior;
      std::shared_ptr<const ProverData> data;
      if (auto* c = std::get_if<CorruptLeaf>(&behavior)) {
        if (spec.random_index) {
          if (n < 2) bad("random corruption needs a ledger of length >= 1");
          c->index = random_fork_index();
        }
        if (c->index >= n) bad("corrupt_leaf index beyond the ledger");
        data = b.fork(ForkPlan{c->index, c->field, n});
      } else if (const auto* lag = std::get_if<HonestLag>(&behavior)) {
        if (lag->lag >= n) bad("honest_lag exceeds the ledger");
        data = b.prefix(n - lag->lag);
      } else if (const auto* t = std::get_if<TruncatedLedger>(&behavior)) {
        if (t->k >= n) bad("truncated_ledger k exceeds the ledger");
        data = b.prefix(n - t->k);
      } else if (const auto* f = std::get_if<FabricatedSuffix>(&behavior)) {
        if (f->bad_at >= b.extension()) bad("fabricated_suffix bad_at must be below the monologue cap");
        data = b.fork(ForkPlan{n + f->bad_at, LeafField::State, n + b.extension()});
      } else if (std::holds_alternative<Staller>(behavior) || std::holds_alternative<GarbageChildren>(behavior) ||
                 std::holds_alternative<InvalidQueryChallenger>(behavior)) {
        if (n < 2) bad("adversary needs a ledger of length >= 1");
        data = b.fork(ForkPlan{random_fork_index(), LeafField::State, n});
      } else {
        data = b.honest();
      }
      std::string name = spec.count > 1 ? spec.id + "-" + std::to_string(copy + 1) : spec.id;
      auto prover = std::make_unique<Prover>(std::move(name), behavior, std::move(data), rng());
      world->ids_.push_back(world->net_.add_party(prover.get()));
      world->provers_.push_back(std::move(prover));
    }
  }
  return world;
}

bool World::honest_commitment(PartyId winner) const {
  const Prover& w = prover(winner);
  if (w.honest()) return true;
  const Claim wc = w.claim();
  for (const auto& p : provers_) {
    if (p->honest() && p->claim().same_commitment(wc)) return true;
  }
  return false;
}

std::vector<std::string> World::names() const {
  std::vector<std::string> out{"verifier"};
  for (const auto& p : provers_) out.push_back(p->name());
  return out;
}

ScenarioRun run_scenario(const Scenario& scenario) {
  auto world = World::build(scenario);
  const std::vector<PartyId> order = order_by_size(world->verifier(), world->ids());
  ScenarioRun run;
  run.tournament = run_tournament(world->verifier(), order);
  run.names = world->names();
  run.winner_name = run.names.at(run.tournament.winner);
  run.honest_won = world->honest_commitment(run.tournament.winner);
  run.n_provers = world->ids().size();
  run.ledger_len = scenario.ledger.length;
  run.arity = scenario.network.arity;
  run.transcript = world->transcript().to_jsonl();
  return run;
}

std::string csv_header() { return "scenario_id,n_provers,ledger_len,m,games,rounds,bytes,sim_seconds,winner,honest_won\n"; }

std::string csv_row(const Scenario& scenario, const ScenarioRun& run) {
  char seconds[64];
  std::snprintf(seconds, sizeof seconds, "%.6f", run.tournament.sim_seconds);
  std::ostringstream out;
  out << scenario.id << ',' << run.n_provers << ',' << run.ledger_len << ',' << run.arity << ','
      << run.tournament.games_played << ',' << run.tournament.total_rounds << ',' << run.tournament.total_bytes << ','
      << seconds << ',' << run.winner_name << ',' << (run.honest_won ? "true" : "false") << '\n';
  return out.str();
}

std::string game_csv_header() {
  return "scenario_id,game,challenger,responder,result,reason,j,exchanges,openings,messages,bytes\n";
}

std::string game_csv_rows(const Scenario& scenario, const ScenarioRun& run) {
  std::ostringstream out;
  std::size_t k = 0;
  for (const auto& g : run.tournament.games) {
    out << scenario.id << ',' << ++k << ',' << run.names.at(g.challenger) << ',' << run.names.at(g.responder) << ','
        << to_string(g.result) << ',' << to_string(g.reason) << ','
        << (g.pinpoint ? std::to_string(g.pinpoint->j) : std::string()) << ',' << g.exchanges << ',' << g.openings
        << ',' << g.messages << ',' << g.bytes << '\n';
  }
  return out.str();
}

}  // namespace lazylight
