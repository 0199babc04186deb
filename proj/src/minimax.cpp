#include "dynacct/minimax.hpp"

#include "dynacct/errors.hpp"
#include "dynacct/sigma_val.hpp"

namespace dynacct {

MinimaxMachine::MinimaxMachine(AgentId self, const ProtocolContext& ctx)
    : self_(self), rho_(ctx.rho), reports_(std::make_shared<ValReports>()) {
  if (rho_ < 1) throw InputError("minimax_punisher needs rho >= 1");
}

void MinimaxMachine::observe(const LocalView& view) { view_ = view; }

bool MinimaxMachine::accused(AgentId subject) const {
  for (const auto& [r, s] : reports_->accusations)
    if (s == subject && r >= view_.round - rho_ && r < view_.round) return true;
  return false;
}

bool MinimaxMachine::deviated_recently() const {
  for (Round r : own_deviations_)
    if (r >= view_.round - rho_ && r < view_.round) return true;
  return false;
}

Decision MinimaxMachine::decide() const {
  Decision d;
  const bool guilty = deviated_recently();
  for (AgentId j : view_.neighbors) {
    IndividualAction a = IndividualAction::cooperate();
    if (guilty) {
      a = IndividualAction::defect();
    } else if (accused(j)) {
      bool other = false;
      for (const auto& [r, s] : reports_->accusations)
        if (s != j && r >= view_.round - rho_ && r < view_.round) other = true;
      a = other ? IndividualAction::cooperate() : IndividualAction::defect();
    }
    d.draws.push_back(Draw::certain(j, a));
  }
  return d;
}

Payload MinimaxMachine::payload_for(AgentId) const { return reports_; }

void MinimaxMachine::record(const RoundOutcome& outcome) {
  const Round m = outcome.round;
  const Decision prescribed = decide();
  for (const auto& [j, act] : outcome.own.per_neighbor)
    if (act.kind == ActionKind::Defect && prescribed.draw_for(j).support.front().first.kind != ActionKind::Defect)
      own_deviations_.insert(m);

  const bool guilty = deviated_recently();
  auto next = std::make_shared<ValReports>(*reports_);
  auto& acc = next->accusations;
  for (const auto& msg : outcome.received) {
    if (msg.action.kind == ActionKind::Defect) {
      // a defection is expected from an accused agent and from anyone punishing this agent
      if (!guilty && !accused(msg.from)) acc.emplace(m, msg.from);
      continue;
    }
    if (!msg.action.sends()) continue;
    auto theirs = std::dynamic_pointer_cast<const ValReports>(msg.payload);
    if (!theirs) continue;
    for (const auto& [r, s] : theirs->accusations)
      if (s != msg.from && s != self_ && r < m && r >= m + 1 - rho_) acc.emplace(r, s);
  }
  acc.erase(acc.begin(), acc.lower_bound({m + 1 - rho_, -1}));
  reports_ = std::move(next);
  own_deviations_.erase(own_deviations_.begin(), own_deviations_.lower_bound(m + 1 - rho_));
}

void MinimaxMachine::fingerprint(std::vector<std::int64_t>& out) const {
  reports_->fingerprint_relative(out, view_.round);
  out.push_back(static_cast<std::int64_t>(own_deviations_.size()));
  for (Round r : own_deviations_) out.push_back(view_.round - r);
}

MachinePtr minimax_punisher(AgentId self, const ProtocolContext& ctx) {
  return std::make_unique<MinimaxMachine>(self, ctx);
}

Decision AlwaysDefectMachine::decide() const {
  Decision d;
  for (AgentId j : view_.neighbors) d.draws.push_back(Draw::certain(j, IndividualAction::defect()));
  return d;
}

}  // namespace dynacct
