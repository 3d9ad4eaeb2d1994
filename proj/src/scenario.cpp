/*
 * Copyright 2026 The PGOT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pgot/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pgot/errors.hpp"

namespace pgot::sim {

using nlohmann::ordered_json;

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("scenario parse error: ") + e.what());
  }
  ScenarioConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    try {
      if (key == "name") c.name = it->get<std::string>();
      else if (key == "rounds") c.rounds = it->get<uint64_t>();
      else if (key == "contributors") c.contributors = it->get<uint64_t>();
      else if (key == "committee_m") c.committee_m = it->get<uint32_t>();
      else if (key == "validators") c.validators = it->get<uint32_t>();
      else if (key == "dim") c.dim = it->get<uint32_t>();
      else if (key == "seed") c.seed = it->get<uint64_t>();
      else if (key == "adversary") c.adversary = it->get<std::string>();
      else if (key == "sybil_n") c.sybil_n = it->get<uint64_t>();
      else if (key == "sybil_split") c.sybil_split = it->get<bool>();
      else if (key == "byzantine_nodes") c.byzantine_nodes = it->get<uint32_t>();
      else if (key == "byzantine_from_round")
        c.byzantine_from_round = it->get<uint64_t>();
      else if (key == "dropout_rate") c.dropout_rate = it->get<double>();
      else if (key == "replay_horizon") c.replay_horizon = it->get<uint64_t>();
      else if (key == "proxy_fail_round")
        c.proxy_fail_round = it->get<uint64_t>();
      else if (key == "receivers") c.receivers = it->get<uint64_t>();
      else if (key == "receiver_escrow")
        c.receiver_escrow = it->get<std::string>();
      else if (key == "alpha_c") c.alpha_c = it->get<std::string>();
      else if (key == "alpha_m") c.alpha_m = it->get<std::string>();
      else if (key == "alpha_t") c.alpha_t = it->get<std::string>();
      else if (key == "r_base") c.r_base = it->get<std::string>();
      else if (key == "attestation_cost")
        c.attestation_cost = it->get<std::string>();
      else if (key == "dp_noise_scale") c.dp_noise_scale = it->get<double>();
      else if (key == "dp_clipping_norm")
        c.dp_clipping_norm = it->get<double>();
      else if (key == "dp_epsilon_budget")
        c.dp_epsilon_budget = it->get<double>();
      else if (key == "k_anonymity_threshold")
        c.k_anonymity_threshold = it->get<uint32_t>();
      else if (key == "min_stake") c.min_stake = it->get<std::string>();
      else if (key == "basis_size") c.basis_size = it->get<uint32_t>();
      else if (key == "lambda_ema") c.lambda_ema = it->get<std::string>();
      else if (key == "beta") c.beta = it->get<std::string>();
      else if (key == "robust_method")
        c.robust_method = it->get<std::string>();
      else if (key == "with_toxicity_proxy")
        c.with_toxicity_proxy = it->get<bool>();
      else if (key == "update_magnitude")
        c.update_magnitude = it->get<double>();
      else
        throw ConfigError("unknown scenario field: " + key);
    } catch (const ordered_json::exception& e) {
      throw ConfigError("scenario field '" + key + "': " + e.what());
    }
  }
  return c;
}

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

namespace {

struct ContributorSeat {
  ContributorId pid;
  crypto::SchnorrKeyPair key;
  CohortId cohort;
  FixedAmount stake;
};

ContributorId pid_from_key(const crypto::SchnorrKeyPair& key) {
  ContributorId pid;
  pid.bytes = crypto::key_fingerprint(key.pub);
  return pid;
}

}  // namespace

struct Simulation::Impl {
  ScenarioConfig cfg;
  crypto::GroupParams params;
  ContentStore store;
  std::unique_ptr<ledger::Ledger> ledger;
  std::unique_ptr<policy::PolicyLog> policy_log;
  round::RoundEnvironment env;
  crypto::DeterministicRng master;

  std::vector<ContributorSeat> seats;        // background population
  std::vector<ContributorSeat> sybil_seats;  // attacker identities
  std::vector<PayoutSet::Entry> escrows;
  uint64_t next_round = 1;
  std::vector<double> replay_update;
  std::vector<crypto::FieldVector> sybil_parts;  // field split of the update
  bool early_activation_reverted = false;
  Cid pending_policy;  // governance scenario proposal
  uint64_t pending_activation_round = 0;

  explicit Impl(ScenarioConfig config)
      : cfg(std::move(config)),
        params(crypto::GroupParams::derive(cfg.dim)),
        master(crypto::DeterministicRng::from_u64(cfg.seed)) {
    // Validators and their registry.
    ValidatorSet validators;
    for (uint32_t i = 0; i < cfg.validators; ++i) {
      auto rng = master.derive("validator", i);
      auto key = crypto::SchnorrKeyPair::generate(params, rng);
      NodeId id;
      id.bytes = crypto::key_fingerprint(key.pub);
      validators.entries.push_back(ValidatorSet::Entry{id, key.pub.serialize()});
      env.node_keys[id] = key;
      env.node_stakes[id] = FixedAmount::from_whole(100);
    }
    std::sort(validators.entries.begin(), validators.entries.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    env.validators = validators;
    env.validator_set_cid = store.put(validators);

    CryptoParams cparams;
    cparams.domain_tag = std::string(params.domain_tag());
    cparams.field_prime = crypto::kFieldPrime;
    cparams.group_modulus_be = crypto::Ge::from_limbs(0, 0, 0).serialize();
    cparams.dim = cfg.dim;
    env.crypto_params_cid = store.put(cparams);

    uint32_t f = (cfg.committee_m - 1) / 3;
    ledger = std::make_unique<ledger::Ledger>(params, validators, f);

    policy_log = std::make_unique<policy::PolicyLog>(store, genesis_bundle());

    env.params = &params;
    env.store = &store;
    env.ledger = ledger.get();
    env.policy_log = policy_log.get();
    env.committee_m = cfg.committee_m;
    env.alpha_c_str = cfg.alpha_c;
    env.alpha_m_str = cfg.alpha_m;
    env.alpha_t_str = cfg.alpha_t;
    env.r_base_str = cfg.r_base;

    uint64_t background = cfg.contributors;
    if (cfg.adversary == "replay") background = 0;
    for (uint64_t i = 0; i < background; ++i)
      seats.push_back(make_seat("contributor", i));
    if (cfg.adversary == "replay") {
      seats.push_back(make_seat("replay-attacker", 0));
      seats.push_back(make_seat("replay-explorer", 0));
    }
    if (cfg.adversary == "sybil_split") {
      uint64_t identities = cfg.sybil_split ? cfg.sybil_n : 1;
      for (uint64_t i = 0; i < identities; ++i)
        sybil_seats.push_back(make_seat("sybil", i));
      build_sybil_parts();
    }

    for (uint64_t i = 0; i < cfg.receivers; ++i) {
      auto rng = master.derive("receiver", i);
      PayoutSet::Entry e;
      e.id = rng.next_hash();
      e.amount = FixedAmount::parse(cfg.receiver_escrow);
      escrows.push_back(e);
    }
  }

  policy::PolicyBundle genesis_bundle() const {
    policy::PolicyBundle b;
    b.dp.noise_scale = cfg.dp_noise_scale;
    b.dp.clipping_norm = cfg.dp_clipping_norm;
    b.dp.epsilon_budget_total = cfg.dp_epsilon_budget;
    b.admission.min_stake = cfg.min_stake;
    b.admission.k_anonymity_threshold = cfg.k_anonymity_threshold;
    b.aggregation.robust_method = cfg.robust_method;
    b.novelty_econ.basis_size = cfg.basis_size;
    b.novelty_econ.lambda_ema = cfg.lambda_ema;
    b.novelty_econ.beta = cfg.beta;
    if (cfg.with_toxicity_proxy || cfg.adversary == "proxy_failure") {
      policy::ProxyConfig p;
      p.name = "toxicity";
      p.threshold = 0.05;
      b.safety.proxy_configs.push_back(p);
    }
    return b;
  }

  ContributorSeat make_seat(const std::string& tag, uint64_t index) {
    auto rng = master.derive(tag, index);
    ContributorSeat seat;
    seat.key = crypto::SchnorrKeyPair::generate(params, rng);
    seat.pid = pid_from_key(seat.key);
    seat.cohort = CohortId{0};
    seat.stake = FixedAmount::parse(cfg.min_stake);
    env.owner_keys[seat.pid] = seat.key;
    ledger->create_registry(seat.pid, seat.key.pub.serialize(), seat.stake);
    return seat;
  }

  void build_sybil_parts() {
    // The attacker's true update, as exactly representable field values.
    auto rng_u = master.derive("sybil-update");
    std::vector<int64_t> base(cfg.dim);
    for (auto& v : base)
      v = static_cast<int64_t>(rng_u.next_below(1u << 29)) - (1 << 28);
    uint64_t n = cfg.sybil_split ? cfg.sybil_n : 1;
    sybil_parts.assign(n, crypto::fv_zero(cfg.dim));
    auto rng_s = master.derive("sybil-partition");
    for (uint32_t c = 0; c < cfg.dim; ++c) {
      int64_t remaining = base[c];
      for (uint64_t j = 0; j + 1 < n; ++j) {
        int64_t part =
            static_cast<int64_t>(rng_s.next_below(1u << 31)) - (1ll << 30);
        sybil_parts[j][c] = crypto::Fe::from_signed(part);
        remaining -= part;
      }
      sybil_parts[n - 1][c] = crypto::Fe::from_signed(remaining);
    }
  }

  std::vector<double> field_to_update(const crypto::FieldVector& v) const {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
      out[i] = static_cast<double>(v[i].signed_lift()) / 65536.0;
    return out;
  }

  std::vector<double> honest_update(const ContributorId& pid, uint64_t round) {
    auto rng = master.derive("update", std::span<const uint8_t>(
                                           pid.bytes.data(), 32))
                   .derive("round", round);
    std::vector<double> u(cfg.dim);
    double scale = cfg.update_magnitude / std::sqrt(double(cfg.dim));
    for (auto& x : u) x = rng.next_gaussian() * scale;
    return u;
  }

  round::RoundRequest build_request(uint64_t round_no) {
    round::RoundRequest req;
    req.round = RoundId{round_no};
    req.receiver_escrows = escrows;
    req.rng = master.derive("round-rng", round_no);

    auto add_candidate = [&](const ContributorSeat& seat,
                             std::vector<double> update) {
      round::Candidate c;
      c.pid = seat.pid;
      c.stake = seat.stake;
      c.cohort = seat.cohort;
      c.attested = true;
      const auto* reg = ledger->find_registry(seat.pid);
      c.rounds_participated = reg ? reg->participation.size() : 0;
      c.weight = FixedAmount::from_whole(1);
      c.update = std::move(update);
      req.candidates.push_back(std::move(c));
    };

    if (cfg.adversary == "replay") {
      const ContributorSeat& attacker = seats[0];
      const ContributorSeat& explorer = seats[1];
      if (replay_update.empty()) {
        auto rng = master.derive("replay-base");
        replay_update.assign(cfg.dim, 0.0);
        double scale = cfg.update_magnitude / std::sqrt(double(cfg.dim));
        for (auto& x : replay_update) x = rng.next_gaussian() * scale;
      }
      bool explorer_round = cfg.replay_horizon > 0 && round_no >= 2 &&
                            round_no < 2 + cfg.replay_horizon;
      if (explorer_round) {
        // Scripted exploration: a fresh axis direction each round evicts
        // the attacker's remembered direction once the basis fills.
        std::vector<double> u(cfg.dim, 0.0);
        u[(round_no - 2) % cfg.dim] = cfg.update_magnitude;
        add_candidate(explorer, std::move(u));
      } else {
        add_candidate(attacker, replay_update);
      }
      return req;
    }

    if (cfg.adversary == "sybil_split") {
      for (const auto& seat : seats)
        add_candidate(seat, honest_update(seat.pid, round_no));
      for (size_t j = 0; j < sybil_seats.size(); ++j)
        add_candidate(sybil_seats[j], field_to_update(sybil_parts[j]));
      return req;
    }

    for (const auto& seat : seats)
      add_candidate(seat, honest_update(seat.pid, round_no));

    if (cfg.adversary == "byzantine_nodes" &&
        round_no >= cfg.byzantine_from_round) {
      req.adversary.byzantine_corrupt_nodes = cfg.byzantine_nodes;
    }
    if (cfg.adversary == "dropout") {
      req.adversary.dropout_rate = cfg.dropout_rate;
    }
    if (cfg.with_toxicity_proxy || cfg.adversary == "proxy_failure") {
      round::ProxyScore s;
      s.name = "toxicity";
      s.baseline = 0.50;
      s.candidate =
          (cfg.adversary == "proxy_failure" && round_no == cfg.proxy_fail_round)
              ? 0.58
              : 0.50;
      req.proxy_scores["toxicity"] = s;
    }
    return req;
  }

  void governance_hook(uint64_t round_no) {
    if (cfg.adversary != "governance_early_activation") return;
    if (round_no == 2) {
      policy::PolicyBundle next = genesis_bundle();
      next.novelty_econ.beta = "0.35";
      next.timelock.t_lock = policy::phase_for_round(round_no).t_lock_min;
      auto rec = policy_log->propose(next, round_no, 0);
      pending_policy = rec.policy_cid;
      pending_activation_round = rec.activation_round;
      // Premature activation must revert.
      policy::ApprovalEvidence ap;
      ap.multisig = policy::MultisigApproval{{0, 1, 2}};
      try {
        policy_log->activate(pending_policy, round_no + 1, ap);
      } catch (const RevertError&) {
        early_activation_reverted = true;
      }
    }
    if (!pending_policy.is_zero() && round_no == pending_activation_round) {
      policy::ApprovalEvidence ap;
      ap.multisig = policy::MultisigApproval{{0, 1, 2}};
      policy_log->activate(pending_policy, round_no, ap);
      pending_policy = Cid{};
    }
  }
};

Simulation::Simulation(ScenarioConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

Simulation::~Simulation() = default;

round::RoundResult Simulation::step() {
  uint64_t round_no = impl_->next_round++;
  impl_->governance_hook(round_no);
  return round::run_round(impl_->env, impl_->build_request(round_no));
}

ContentStore& Simulation::store() { return impl_->store; }
policy::PolicyLog& Simulation::policy_log() { return *impl_->policy_log; }
ledger::Ledger& Simulation::ledger() { return *impl_->ledger; }
round::RoundEnvironment& Simulation::env() { return impl_->env; }
const ScenarioConfig& Simulation::config() const { return impl_->cfg; }

const std::vector<ContributorId>& Simulation::contributor_ids() const {
  static thread_local std::vector<ContributorId> ids;
  ids.clear();
  for (const auto& s : impl_->seats) ids.push_back(s.pid);
  for (const auto& s : impl_->sybil_seats) ids.push_back(s.pid);
  return ids;
}

audit::PublicView Simulation::audit_view() const {
  audit::PublicView view;
  view.store = &impl_->store;
  view.policy_log = impl_->policy_log.get();
  view.params = &impl_->params;
  view.validator_set_cid = impl_->env.validator_set_cid;
  return view;
}

ScenarioResult Simulation::run_all() {
  ScenarioResult result;
  for (uint64_t r = 0; r < impl_->cfg.rounds; ++r) {
    round::RoundResult rr = step();
    audit::AuditReport report =
        audit::verify_receipt(audit_view(), rr.anchor);

    RoundSummary s;
    s.round = rr.receipt.round_id;
    s.status = rr.receipt.round_status;
    s.phi = rr.phi;
    s.phi_ema = rr.phi_ema;
    s.method = agg::robust_method_name(rr.method);
    s.n_admitted = rr.receipt.n_admitted;
    s.audit_pass = report.verdict;
    s.receipt_cid = rr.receipt_cid;
    result.rounds.push_back(s);
    result.details.push_back(std::move(rr));
    result.all_audits_pass = result.all_audits_pass && report.verdict;
    if (s.status == "Accepted")
      ++result.accepted_rounds;
    else
      ++result.failed_rounds;
  }
  result.gas_total = impl_->ledger->gas();
  result.early_activation_reverted = impl_->early_activation_reverted;
  for (const auto& seat : impl_->sybil_seats)
    result.attacker_pids.push_back(seat.pid);
  if (impl_->cfg.adversary == "replay" && !impl_->seats.empty())
    result.attacker_pids.push_back(impl_->seats[0].pid);
  return result;
}

void Simulation::write_artifacts(const std::string& out_dir,
                                 const ScenarioResult& result) const {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  impl_->store.save_to_directory(out_dir + "/store");

  ordered_json summary;
  summary["scenario"] = impl_->cfg.name;
  summary["seed"] = impl_->cfg.seed;
  summary["rounds"] = ordered_json::array();
  for (size_t i = 0; i < result.rounds.size(); ++i) {
    const auto& r = result.rounds[i];
    ordered_json jr;
    jr["round"] = r.round;
    jr["status"] = r.status;
    jr["phi"] = r.phi;
    jr["phi_ema"] = r.phi_ema;
    jr["method"] = r.method;
    jr["n_admitted"] = r.n_admitted;
    jr["audit_pass"] = r.audit_pass;
    jr["receipt_cid"] = r.receipt_cid.text();
    // rewards by class, settled amounts
    FixedAmount base, quality, nov;
    for (const auto& rw : result.details[i].rewards) {
      base = base.add(rw.base);
      quality = quality.add(rw.quality);
      nov = nov.add(rw.novelty);
    }
    jr["rewards_base"] = Decimal::from_fixed(base).exact_string();
    jr["rewards_quality"] = Decimal::from_fixed(quality).exact_string();
    jr["rewards_novelty"] = Decimal::from_fixed(nov).exact_string();
    summary["rounds"].push_back(jr);
  }
  summary["accepted_rounds"] = result.accepted_rounds;
  summary["failed_rounds"] = result.failed_rounds;
  summary["all_audits_pass"] = result.all_audits_pass;
  summary["gas_units"] = result.gas_total.gas_units_string();
  summary["gas_dollars"] = result.gas_total.dollars_string();
  std::ofstream(out_dir + "/summary.json") << summary.dump(2) << "\n";

  std::ofstream series(out_dir + "/novelty_series.csv");
  series << "round,phi,phi_ema,status\n";
  for (const auto& r : result.rounds)
    series << r.round << "," << r.phi << "," << r.phi_ema << "," << r.status
           << "\n";

  fs::create_directories(out_dir + "/audit");
  for (const auto& rr : result.details) {
    audit::AuditReport report = audit::verify_receipt(audit_view(), rr.anchor);
    std::ofstream(out_dir + "/audit/round_" +
                  std::to_string(rr.receipt.round_id) + ".txt")
        << report.render_text();
  }

  CostReport cost = cost_report(impl_->cfg.contributors, impl_->cfg.rounds);
  std::ofstream(out_dir + "/cost_report.txt") << cost.render_text();

  // Chain state for audit-only reruns: anchors plus the public policy log.
  ordered_json chain;
  chain["validator_set_cid"] = impl_->env.validator_set_cid.text();
  chain["dim"] = impl_->cfg.dim;
  chain["anchors"] = ordered_json::array();
  for (const auto& rr : result.details)
    chain["anchors"].push_back(cid_of(rr.anchor).text());
  chain["proposals"] = ordered_json::array();
  for (const auto& p : impl_->policy_log->proposals()) {
    ordered_json jp;
    jp["policy_cid"] = p.policy_cid.text();
    jp["propose_round"] = p.propose_round;
    jp["activation_round"] = p.activation_round;
    jp["t_lock"] = p.t_lock;
    chain["proposals"].push_back(jp);
  }
  chain["activations"] = ordered_json::array();
  for (const auto& a : impl_->policy_log->activations()) {
    ordered_json ja;
    ja["policy_cid"] = a.policy_cid.text();
    ja["activated_at"] = a.activated_at;
    chain["activations"].push_back(ja);
  }
  std::ofstream(out_dir + "/chain.json") << chain.dump(2) << "\n";
}

bool audit_directory(const std::string& dir, std::string& log) {
  std::ifstream in(dir + "/chain.json");
  if (!in) throw ConfigError("no chain.json in " + dir);
  ordered_json chain = ordered_json::parse(in);

  ContentStore store = ContentStore::load_from_directory(dir + "/store");
  std::vector<policy::ProposalRecord> proposals;
  for (const auto& jp : chain["proposals"]) {
    proposals.push_back(policy::ProposalRecord{
        Cid::parse(jp["policy_cid"].get<std::string>()),
        jp["propose_round"].get<uint64_t>(),
        jp["activation_round"].get<uint64_t>(),
        jp["t_lock"].get<uint64_t>()});
  }
  std::vector<policy::ActivationRecord> activations;
  for (const auto& ja : chain["activations"]) {
    activations.push_back(policy::ActivationRecord{
        Cid::parse(ja["policy_cid"].get<std::string>()),
        ja["activated_at"].get<uint64_t>()});
  }
  policy::PolicyLog log_view(store, std::move(proposals),
                             std::move(activations));
  crypto::GroupParams params =
      crypto::GroupParams::derive(chain["dim"].get<uint32_t>());

  audit::PublicView view;
  view.store = &store;
  view.policy_log = &log_view;
  view.params = &params;
  view.validator_set_cid =
      Cid::parse(chain["validator_set_cid"].get<std::string>());

  bool all_pass = true;
  std::ostringstream os;
  for (const auto& ja : chain["anchors"]) {
    Cid anchor_cid = Cid::parse(ja.get<std::string>());
    RoundAnchor anchor = store.get<RoundAnchor>(anchor_cid);
    audit::AuditReport report = audit::verify_receipt(view, anchor);
    os << "round " << anchor.round.value << ": "
       << (report.verdict ? "PASS" : "FAIL") << "  "
       << anchor.receipt_cid.text() << "\n";
    all_pass = all_pass && report.verdict;
  }
  log = os.str();
  return all_pass;
}

ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::optional<std::string>& out_dir) {
  Simulation sim(config);
  ScenarioResult result = sim.run_all();
  if (out_dir) sim.write_artifacts(*out_dir, result);
  return result;
}

uint64_t CostReport::total_nanodollars() const {
  return onchain_microgas + storage_nanodollars + committee_nanodollars;
}

std::string CostReport::gas_units_string() const {
  ledger::GasMeter m;
  m.owned_updates = contributors;
  m.shared_updates = 4;
  return m.gas_units_string();
}

std::string CostReport::onchain_dollars_string() const {
  ledger::GasMeter m;
  m.owned_updates = contributors;
  m.shared_updates = 4;
  return m.dollars_string();
}

namespace {
std::string cents_string(uint64_t nanodollars) {
  uint64_t cents = (nanodollars + 5'000'000) / 10'000'000;  // half-up
  std::string whole = std::to_string(cents / 100);
  std::string frac = std::to_string(cents % 100);
  if (frac.size() < 2) frac.insert(0, 2 - frac.size(), '0');
  return whole + "." + frac;
}
}  // namespace

std::string CostReport::total_per_round_string() const {
  return cents_string(total_nanodollars());
}

std::string CostReport::per_contributor_string() const {
  if (contributors == 0) return "0.000000";
  uint64_t per_nano = total_nanodollars() / contributors;
  uint64_t micro = (per_nano + 500) / 1000;  // half-up to 1e-6 dollars
  std::string whole = std::to_string(micro / 1'000'000);
  std::string frac = std::to_string(micro % 1'000'000);
  if (frac.size() < 6) frac.insert(0, 6 - frac.size(), '0');
  return whole + "." + frac;
}

std::string CostReport::render_text() const {
  std::ostringstream os;
  os << "per-round cost breakdown (" << contributors << " contributors)\n";
  os << "  on-chain: " << gas_units_string() << " gas units  $"
     << onchain_dollars_string() << "\n";
  os << "    owned updates:  " << contributors << " x 0.0025 gas\n";
  os << "    shared updates: 4 x 0.5 gas\n";
  os << "  storage:   $"
     << Decimal::parse(std::to_string(storage_nanodollars))
            .mul(Decimal::parse("0.000000001"))
            .exact_string()
     << "  (adapters, aggregate model, archival receipts)\n";
  os << "  committee: $"
     << Decimal::parse(std::to_string(committee_nanodollars))
            .mul(Decimal::parse("0.000000001"))
            .exact_string()
     << "  (validator infrastructure, amortized)\n";
  os << "  total:     $" << total_per_round_string() << " per round\n";
  os << "  per contributor: $" << per_contributor_string() << "\n";
  if (rounds > 0) {
    os << "  horizon: " << rounds << " rounds -> $"
       << cents_string(total_nanodollars() * rounds) << "\n";
  }
  return os.str();
}

CostReport cost_report(uint64_t contributors, uint64_t rounds) {
  CostReport r;
  r.contributors = contributors;
  r.rounds = rounds;
  r.onchain_microgas = contributors * 2500 + 4 * 500000;
  // Fixed storage line items: temporary adapters ($0.007), persistent
  // aggregate model ($0.012), archival receipts and proofs ($0.00015).
  r.storage_nanodollars = contributors == 0
                              ? 12'150'000
                              : 7'000'000 + 12'000'000 + 150'000;
  r.committee_nanodollars = 3'500'000'000;
  return r;
}

}  // namespace pgot::sim
