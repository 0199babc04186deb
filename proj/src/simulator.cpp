#include "dynacct/simulator.hpp"

#include <cmath>
#include <thread>

#include "dynacct/errors.hpp"

namespace dynacct {

const EvolvingGraph& SimConfig::graph() const {
  if (member.empty()) {
    if (family.members.empty()) throw InputError("family has no members");
    return family.members.front();
  }
  return family.members.at(family.member_index(member));
}

ProtocolContext SimConfig::context() const { return ProtocolContext{family.n, rho, params.mode, family.observation}; }

void SimConfig::validate() const {
  family.validate();
  graph();
  if (horizon < 1) throw InputError("horizon must be >= 1");
  if (rho < 1) throw InputError("rho must be >= 1");
  if (static_cast<int>(strategies.size()) != family.n)
    throw InputError("expected " + std::to_string(family.n) + " strategies, got " + std::to_string(strategies.size()));
  params.validate(family.n, rho);
  build_machines(*this);  // unknown protocols and protocol/model mismatches
}

std::vector<MachinePtr> build_machines(const SimConfig& cfg) {
  std::vector<MachinePtr> machines;
  const ProtocolContext ctx = cfg.context();
  for (AgentId a = 0; a < cfg.n(); ++a) {
    if (auto it = cfg.machine_overrides.find(a); it != cfg.machine_overrides.end())
      machines.push_back(it->second->clone());
    else
      machines.push_back(make_machine(cfg.strategies.at(static_cast<std::size_t>(a)), a, ctx));
  }
  return machines;
}

std::vector<Decision> decide_all(const EvolvingGraph& g, Round m, ObservationModel obs, std::vector<MachinePtr>& machines) {
  std::vector<Decision> out;
  out.reserve(machines.size());
  for (AgentId a = 0; a < static_cast<AgentId>(machines.size()); ++a) {
    machines[static_cast<std::size_t>(a)]->observe(local_view(g, a, m, obs));
    out.push_back(machines[static_cast<std::size_t>(a)]->decide());
  }
  return out;
}

void play_round(const EvolvingGraph& g, Round m, std::vector<MachinePtr>& machines, const ActionProfile& profile) {
  const RoundGraph& rg = graph_at(g, m);
  const int n = static_cast<int>(machines.size());
  std::vector<RoundOutcome> outcomes(static_cast<std::size_t>(n));
  for (AgentId a = 0; a < n; ++a) {
    RoundOutcome& o = outcomes[static_cast<std::size_t>(a)];
    o.round = m;
    o.own = profile.actions[static_cast<std::size_t>(a)];
    for (AgentId j : rg.neighbors(a)) {
      ReceivedMessage msg;
      msg.from = j;
      msg.action = profile.actions[static_cast<std::size_t>(j)].toward(a);
      if (msg.action.sends()) msg.payload = machines[static_cast<std::size_t>(j)]->payload_for(a);
      o.received.push_back(std::move(msg));
    }
  }
  for (AgentId a = 0; a < n; ++a) machines[static_cast<std::size_t>(a)]->record(outcomes[static_cast<std::size_t>(a)]);
}

namespace {

Run run(const SimConfig& cfg, bool keep_records, bool snapshots) {
  cfg.validate();
  auto graph = std::make_shared<const EvolvingGraph>(cfg.graph());
  std::vector<MachinePtr> machines = build_machines(cfg);
  Rng rng(cfg.seed);
  Run out;
  out.trace.history.graph = graph;
  out.trace.rng_seed = cfg.seed;
  for (Round m = 1; m <= cfg.horizon; ++m) {
    std::vector<Decision> decisions = decide_all(*graph, m, cfg.family.observation, machines);
    ActionProfile profile;
    profile.round = m;
    for (AgentId a = 0; a < cfg.n(); ++a) {
      Action act = sample(decisions[static_cast<std::size_t>(a)], a, m, rng);
      for (const auto& [j, x] : act.per_neighbor) check_legal(x, cfg.params.mode, cfg.n());
      profile.actions.push_back(std::move(act));
    }
    play_round(*graph, m, machines, profile);
    std::vector<Rational> utils;
    for (AgentId a = 0; a < cfg.n(); ++a) utils.push_back(round_utility(a, profile, graph_at(*graph, m), cfg.params));
    out.trace.utilities.push_back(std::move(utils));
    out.trace.history.profiles.push_back(std::move(profile));
    if (keep_records) {
      RoundRecord rec;
      rec.round = m;
      rec.decisions = std::move(decisions);
      if (snapshots)
        for (const auto& mach : machines) rec.machines_after.push_back(std::shared_ptr<const StrategyMachine>(mach->clone()));
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace

Trace simulate(const SimConfig& cfg) { return run(cfg, false, false).trace; }

Run simulate_recorded(const SimConfig& cfg, bool snapshots) { return run(cfg, true, snapshots); }

MonteCarloResult monte_carlo_utility(const SimConfig& cfg, AgentId i, std::size_t samples, unsigned threads) {
  if (samples < 1) throw InputError("samples must be >= 1");
  cfg.validate();
  if (threads < 1) threads = 1;
  const double delta = to_double(cfg.params.delta);
  std::vector<double> values(samples);
  auto worker = [&](unsigned t) {
    for (std::size_t k = t; k < samples; k += threads) {
      SimConfig c = cfg;
      c.seed = cfg.seed + k;
      const Trace tr = simulate(c);
      double total = 0, w = 1;
      for (Round m = 1; m <= tr.rounds(); ++m) {
        total += w * to_double(tr.utility(i, m));
        w *= delta;
      }
      values[k] = total;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();

  MonteCarloResult r;
  r.samples = samples;
  double sum = 0;
  for (double v : values) sum += v;
  r.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double ss = 0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    r.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
  }
  return r;
}

}  // namespace dynacct
