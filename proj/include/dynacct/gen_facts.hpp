#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynacct/sigma_gen.hpp"
#include "dynacct/simulator.hpp"

namespace dynacct {

struct FactResult {
  explicit FactResult(std::string fact = {}) : name(std::move(fact)) {}

  std::string name;
  bool pass = true;
  std::optional<AgentId> agent;  // first violation
  std::optional<Round> round;
  std::string detail;

  void fail(AgentId a, Round r, std::string why);
};

struct GenFactReport {
  AgentId deviator = 0;
  Round round = 0;
  int degree = 0;
  bool defected = false;
  Rational extra_punishments = 0;  // expected, over all rounds after the deviation
  Rational utility_loss = 0;       // undiscounted, over (m, m + n^2]
  std::vector<FactResult> facts;

  bool all_pass() const;
  const FactResult& fact(const std::string& name) const;
};

// sigma_gen state of a machine, looking through deviation wrappers; null otherwise.
const GenMachine* gen_machine(const StrategyMachine& m);

// Paired run: `deviating` differs from `conforming` only in i's round-m action. Runs both with
// state snapshots and checks the pending-punishment facts F1-F6 plus boundedness.
GenFactReport assert_gen_facts(const SimConfig& conforming, const SimConfig& deviating, AgentId i, Round m);

// Every pend value in [0, n-1] and every state within GenMachine::state_bound(n).
FactResult check_gen_boundedness(const Run& run, int n);

// Every pend table is all zeros at the end of round last_deviation + n^2 (and after).
FactResult check_gen_recovery(const Run& run, int n, Round last_deviation);

nlohmann::json to_json(const GenFactReport& r);
nlohmann::json to_json(const FactResult& f);

}  // namespace dynacct
