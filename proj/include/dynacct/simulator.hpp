#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dynacct/evolving_graph.hpp"
#include "dynacct/game.hpp"
#include "dynacct/machine_factory.hpp"
#include "dynacct/strategy.hpp"

namespace dynacct {

struct SimConfig {
  GraphFamily family;
  std::string member;                       // empty: the first member
  std::vector<StrategySpec> strategies;     // one per agent
  long rho = 1;
  Round horizon = 1;
  std::uint64_t seed = 0;
  UtilityParams params;
  // Prebuilt machines cloned in place of the spec for these agents (mutants, test doubles).
  std::map<AgentId, std::shared_ptr<const StrategyMachine>> machine_overrides;

  int n() const { return family.n; }
  const EvolvingGraph& graph() const;
  ProtocolContext context() const;
  // Throws InputError on a broken configuration.
  void validate() const;
};

std::vector<MachinePtr> build_machines(const SimConfig& cfg);

// Observe and decide for every agent at round m.
std::vector<Decision> decide_all(const EvolvingGraph& g, Round m, ObservationModel obs, std::vector<MachinePtr>& machines);

// Reveal a realized profile: collect payloads, then record every machine's outcome.
void play_round(const EvolvingGraph& g, Round m, std::vector<MachinePtr>& machines, const ActionProfile& profile);

Trace simulate(const SimConfig& cfg);

struct RoundRecord {
  Round round = 0;
  std::vector<Decision> decisions;                                   // indexed by agent
  std::vector<std::shared_ptr<const StrategyMachine>> machines_after;  // empty unless snapshots were requested
};

struct Run {
  Trace trace;
  std::vector<RoundRecord> records;  // records[m-1]
};

Run simulate_recorded(const SimConfig& cfg, bool snapshots);

struct MonteCarloResult {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

// Sample k uses seed + k, so the result does not depend on `threads`.
MonteCarloResult monte_carlo_utility(const SimConfig& cfg, AgentId i, std::size_t samples, unsigned threads = 1);

}  // namespace dynacct
