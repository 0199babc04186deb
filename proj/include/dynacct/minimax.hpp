#pragma once

#include <set>
#include <utility>

#include "dynacct/sigma_val.hpp"

namespace dynacct {

/// Scripted base protocol with unsafe defections, used by the dual and lenient evasive scenarios.
/// Accused agents are punished by defection for rho rounds; an agent that knows it deviated defects
/// everyone for rho rounds (mutual defection). An agent holding an accusation against some third
/// party cooperates with an accused neighbour instead, so that the accusation is forwarded.
class MinimaxMachine : public StrategyMachine {
 public:
  MinimaxMachine(AgentId self, const ProtocolContext& ctx);

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<MinimaxMachine>(*this); }
  std::string name() const override { return "minimax_punisher"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override;
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;

  bool accused(AgentId subject) const;
  bool deviated_recently() const;

 private:
  AgentId self_;
  long rho_;
  LocalView view_;
  std::shared_ptr<ValReports> reports_;
  std::set<Round> own_deviations_;
};

MachinePtr minimax_punisher(AgentId self, const ProtocolContext& ctx);

/// Defects every neighbour in every round.
class AlwaysDefectMachine : public StrategyMachine {
 public:
  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<AlwaysDefectMachine>(*this); }
  std::string name() const override { return "always_defect"; }
  void observe(const LocalView& view) override { view_ = view; }
  Decision decide() const override;
  Payload payload_for(AgentId) const override { return nullptr; }
  void record(const RoundOutcome&) override {}
  void fingerprint(std::vector<std::int64_t>&) const override {}

 private:
  LocalView view_;
};

}  // namespace dynacct
