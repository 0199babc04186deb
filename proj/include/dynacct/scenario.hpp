#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynacct/equilibrium.hpp"
#include "dynacct/family_checks.hpp"
#include "dynacct/simulator.hpp"

namespace dynacct {

/// A named family check with its parameters.
struct CheckSpec {
  std::string name;  // timely | connectivity | eventual_dist | ambiguous_po | unsafe
  std::optional<long> rho;
  std::optional<Round> m_star;
  std::optional<std::string> member;
  std::optional<AgentId> agent;
  std::optional<AgentId> partner;
  std::optional<Round> round;
};

struct CandidateSpec {
  AgentId agent = 0;
  std::string label;
  StrategySpec strategy;
};

struct Scenario {
  std::string name;
  std::string description;
  GraphFamily family;
  std::string member;  // member graph the simulator and verifier run on
  long rho = 1;
  UtilityParams params;
  std::vector<StrategySpec> strategies;
  std::vector<CandidateSpec> candidates;
  std::vector<CheckSpec> checks;
  Round horizon = 1;
  std::uint64_t seed = 0;
  int robust_depth = 2;
  std::vector<AgentId> verify_agents;  // empty: every agent

  SimConfig config() const;
  VerifyOptions verify_options(AgentId i) const;
  void validate() const;
};

// Horizon covering `deviation_rounds` deviation rounds with a tail bound below eps.
Round verification_horizon(const UtilityParams& p, int n, Round deviation_rounds, const Rational& eps);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);

struct CheckOutcome {
  bool holds = false;
  nlohmann::json report;
};

CheckOutcome run_check(const GraphFamily& f, const CheckSpec& spec);

}  // namespace dynacct
