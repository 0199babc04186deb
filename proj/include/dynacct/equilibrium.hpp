#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dynacct/distribution.hpp"

namespace dynacct {

struct VerifyOptions {
  int robust_depth = 2;
  Round last_deviation_round = 0;  // 0: scan until the on-path state repeats
  // Whole-strategy deviations tried before the one-shot search; ties keep the candidate.
  std::vector<std::pair<std::string, StrategySpec>> candidates;
  std::size_t cap = kDefaultEnumerationCap;
};

struct DeviationWitness {
  AgentId agent = 0;
  Round round = 0;
  int depth = 1;  // 1: on-path information set; 2: after an earlier own deviation
  std::vector<AgentId> neighbors;
  std::map<AgentId, IndividualAction> override_action;  // empty for a candidate
  std::optional<std::string> candidate;
  std::size_t info_set_branches = 0;
};

struct CandidateResult {
  std::string label;
  Round first_divergence = 0;  // 0: never differs from the honest play
  Rational gain = 0;
  Rational tolerance = 0;
};

struct EquilibriumReport {
  AgentId agent = 0;
  Rational max_gain = 0;
  Rational tolerance = 0;
  bool pass = true;
  std::optional<DeviationWitness> witness;
  std::size_t info_sets = 0;
  Round last_round_scanned = 0;
  Round horizon = 0;
  int robust_depth = 1;
  std::vector<CandidateResult> candidates;
};

EquilibriumReport verify_one_shot(const SimConfig& cfg, AgentId i, const VerifyOptions& options = {});

// Every on-path individual action over the first `rounds` rounds is Cooperate (or PP(0)).
bool on_path_cooperation(const SimConfig& cfg, Round rounds, std::string* detail = nullptr);

// Round position within the graph's periodic structure.
Round graph_position(const EvolvingGraph& g, Round m);

nlohmann::json to_json(const EquilibriumReport& r);
nlohmann::json to_json(const DeviationWitness& w);

}  // namespace dynacct
