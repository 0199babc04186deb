#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynacct/evolving_graph.hpp"
#include "dynacct/rational.hpp"

namespace dynacct {

enum class Mode { Valuable, General };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

enum class ActionKind { Cooperate, Defect, Punish, ProportionalPunish, AvoidPunishment };

struct IndividualAction {
  ActionKind kind = ActionKind::Cooperate;
  int count = 0;  // only for ProportionalPunish

  static IndividualAction cooperate() { return {ActionKind::Cooperate, 0}; }
  static IndividualAction defect() { return {ActionKind::Defect, 0}; }
  static IndividualAction punish() { return {ActionKind::Punish, 0}; }
  static IndividualAction proportional(int c) { return {ActionKind::ProportionalPunish, c}; }
  static IndividualAction avoid() { return {ActionKind::AvoidPunishment, 0}; }

  // Cooperate, Punish and ProportionalPunish send messages (and cost 1).
  bool sends() const;
  // A punishment in the sense of the punishment counter.
  bool punishes() const;

  // "C", "D", "P", "PP<c>", "A"
  std::string code() const;
  static IndividualAction parse(const std::string& code);

  auto operator<=>(const IndividualAction&) const = default;
};

// Throws InputError if the action is not allowed in this mode for n agents.
void check_legal(const IndividualAction& a, Mode mode, int n);

// Every action an agent may take toward one neighbour.
std::vector<IndividualAction> legal_actions(Mode mode, int n);

struct Action {
  AgentId agent = 0;
  Round round = 0;
  std::map<AgentId, IndividualAction> per_neighbor;

  const IndividualAction& toward(AgentId j) const;
  bool operator==(const Action&) const = default;
};

struct ActionProfile {
  Round round = 0;
  std::vector<Action> actions;  // indexed by agent

  bool operator==(const ActionProfile&) const = default;
};

struct UtilityParams {
  Rational beta = 0;
  Rational alpha = 0;
  Rational pi = 0;
  Rational delta = 0;
  Mode mode = Mode::General;

  // Largest utility difference a single round can produce for one agent.
  Rational y(int n) const;

  // Mode constraints; rho is the punishment bound the Valuable constraint refers to.
  void validate(int n, std::optional<long> rho) const;
};

UtilityParams default_params(Mode mode, int n, long rho);

Rational edge_utility(const IndividualAction& mine, const IndividualAction& theirs, const UtilityParams& params);

Rational round_utility(AgentId i, const ActionProfile& profile, const RoundGraph& graph, const UtilityParams& params);

struct History {
  std::shared_ptr<const EvolvingGraph> graph;
  std::vector<ActionProfile> profiles;  // rounds 1..m-1
};

struct Trace {
  History history;
  std::vector<std::vector<Rational>> utilities;  // [round-1][agent]
  std::uint64_t rng_seed = 0;

  Round rounds() const { return static_cast<Round>(history.profiles.size()); }
  const Rational& utility(AgentId i, Round m) const;
};

// Checks every profile against the graph and the mode; throws InputError.
void check_history(const History& h, const UtilityParams& params);

Rational discounted_utility(const Trace& t, AgentId i, Round from, const UtilityParams& params);

// delta^horizon * y * n / (1 - delta)
Rational tail_bound(const UtilityParams& params, int n, Round horizon);

// Smallest horizon whose tail bound is below eps.
Round horizon_for_tail(const UtilityParams& params, int n, const Rational& eps);

}  // namespace dynacct
