#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dynacct/evolving_graph.hpp"
#include "dynacct/game.hpp"
#include "dynacct/rational.hpp"

namespace dynacct {

/// Monitoring information a machine attaches to the messages it sends in a round.
class MonitoringInfo {
 public:
  virtual ~MonitoringInfo() = default;
  virtual void fingerprint(std::vector<std::int64_t>& out) const = 0;
};

using Payload = std::shared_ptr<const MonitoringInfo>;

/// One labelled randomization point: the individual action toward one neighbour.
struct Draw {
  AgentId neighbor = 0;
  std::vector<std::pair<IndividualAction, Rational>> support;  // probabilities sum to 1

  bool deterministic() const { return support.size() == 1; }
  static Draw certain(AgentId neighbor, IndividualAction a) { return Draw{neighbor, {{a, Rational(1)}}}; }
};

/// Independent draws, one per neighbour, in ascending neighbour order.
struct Decision {
  std::vector<Draw> draws;

  Draw& draw_for(AgentId neighbor);
  const Draw& draw_for(AgentId neighbor) const;
  // Every draw is degenerate.
  bool deterministic() const;
  // Action built from the first support entry of every draw.
  Action mode_action(AgentId agent, Round round) const;
  static Decision certain(const Action& a);
};

using Rng = std::mt19937_64;

// Exact-probability sampling: one rng call per non-degenerate draw, neighbours ascending.
Action sample(const Decision& d, AgentId agent, Round round, Rng& rng);

struct ReceivedMessage {
  AgentId from = 0;
  IndividualAction action;  // the neighbour's action toward this agent
  Payload payload;          // null unless the action sends
};

struct RoundOutcome {
  Round round = 0;
  Action own;                              // what this agent actually played
  std::vector<ReceivedMessage> received;   // ascending neighbour

  const ReceivedMessage* from(AgentId j) const;
};

/// A protocol's per-agent state machine. Each round: observe, decide, payload_for, record.
class StrategyMachine {
 public:
  virtual ~StrategyMachine() = default;

  virtual std::unique_ptr<StrategyMachine> clone() const = 0;
  virtual std::string name() const = 0;

  // Start of round: the agent's view of the round topology.
  virtual void observe(const LocalView& view) = 0;
  virtual Decision decide() const = 0;
  // Monitoring information sent to `neighbor` this round if the realized action sends.
  virtual Payload payload_for(AgentId neighbor) const = 0;
  // End of round: own realized action and what every neighbour did toward this agent.
  virtual void record(const RoundOutcome& outcome) = 0;

  // Exact encoding of the internal state; equal encodings behave identically from here on.
  virtual void fingerprint(std::vector<std::int64_t>& out) const = 0;
  virtual std::size_t state_size() const { return 0; }
};

using MachinePtr = std::unique_ptr<StrategyMachine>;

/// Fixed information every machine is built with.
struct ProtocolContext {
  int n = 0;
  long rho = 1;
  Mode mode = Mode::General;
  ObservationModel observation = ObservationModel::NeighborsOnly;
};

}  // namespace dynacct
