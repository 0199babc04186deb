#pragma once

#include <set>
#include <utility>

#include "dynacct/strategy.hpp"

namespace dynacct {

/// Accusations (round, subject) within the last rho rounds.
struct ValReports : MonitoringInfo {
  std::set<std::pair<Round, AgentId>> accusations;
  void fingerprint(std::vector<std::int64_t>& out) const override;
  // Rounds encoded as their distance from `now`, so that states at different rounds compare.
  void fingerprint_relative(std::vector<std::int64_t>& out, Round now) const;
};

/// Report-window protocol. In valuable exchanges each neighbour is punished in proportion to the
/// accusations held against it; the General-mode variant punishes actively when any is held.
class ValMachine : public StrategyMachine {
 public:
  enum class Style { Proportional, Active };

  ValMachine(AgentId self, const ProtocolContext& ctx, Style style);

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<ValMachine>(*this); }
  std::string name() const override { return style_ == Style::Proportional ? "sigma_val" : "safe_punisher"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override;
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;
  std::size_t state_size() const override { return reports_->accusations.size(); }

  // Accusations against `subject` inside the current window.
  int accusations_against(AgentId subject) const;
  bool holds(AgentId subject, Round round) const;
  const std::set<std::pair<Round, AgentId>>& accusations() const { return reports_->accusations; }

 private:
  AgentId self_;
  int n_;
  long rho_;
  Style style_;
  LocalView view_;
  std::shared_ptr<ValReports> reports_;
};

MachinePtr sigma_val(AgentId self, const ProtocolContext& ctx);
MachinePtr safe_punisher(AgentId self, const ProtocolContext& ctx);

}  // namespace dynacct
