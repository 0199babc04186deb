#include "dynacct/sigma_val.hpp"

#include <algorithm>

#include "dynacct/errors.hpp"

namespace dynacct {

void ValReports::fingerprint(std::vector<std::int64_t>& out) const {
  out.push_back(static_cast<std::int64_t>(accusations.size()));
  for (const auto& [r, s] : accusations) {
    out.push_back(r);
    out.push_back(s);
  }
}

void ValReports::fingerprint_relative(std::vector<std::int64_t>& out, Round now) const {
  out.push_back(static_cast<std::int64_t>(accusations.size()));
  for (const auto& [r, s] : accusations) {
    out.push_back(now - r);
    out.push_back(s);
  }
}

ValMachine::ValMachine(AgentId self, const ProtocolContext& ctx, Style style)
    : self_(self), n_(ctx.n), rho_(ctx.rho), style_(style), reports_(std::make_shared<ValReports>()) {
  if (rho_ < 1) throw InputError("report window needs rho >= 1");
  if (style == Style::Proportional && ctx.mode != Mode::Valuable)
    throw InputError("sigma_val requires valuable exchanges");
  if (style == Style::Active && ctx.mode != Mode::General)
    throw InputError("safe_punisher requires general exchanges");
}

void ValMachine::observe(const LocalView& view) {
  view_ = view;
  const Round oldest = view.round - rho_;
  if (!reports_->accusations.empty() && reports_->accusations.begin()->first < oldest) {
    auto copy = std::make_shared<ValReports>(*reports_);
    auto& acc = copy->accusations;
    acc.erase(acc.begin(), acc.lower_bound({oldest, -1}));
    reports_ = std::move(copy);
  }
}

int ValMachine::accusations_against(AgentId subject) const {
  int c = 0;
  for (const auto& [r, s] : reports_->accusations)
    if (s == subject && r >= view_.round - rho_ && r < view_.round) ++c;
  return c;
}

bool ValMachine::holds(AgentId subject, Round round) const { return reports_->accusations.count({round, subject}) > 0; }

Decision ValMachine::decide() const {
  Decision d;
  const int cap = static_cast<int>(std::min<long>(rho_, n_ - 1));
  for (AgentId j : view_.neighbors) {
    const int c = std::min(accusations_against(j), cap);
    IndividualAction a = IndividualAction::cooperate();
    if (c > 0) a = style_ == Style::Proportional ? IndividualAction::proportional(c) : IndividualAction::punish();
    d.draws.push_back(Draw::certain(j, a));
  }
  return d;
}

Payload ValMachine::payload_for(AgentId) const { return reports_; }

void ValMachine::record(const RoundOutcome& outcome) {
  const Round m = outcome.round;
  auto next = std::make_shared<ValReports>(*reports_);
  auto& acc = next->accusations;
  for (const auto& msg : outcome.received) {
    if (msg.action.kind == ActionKind::Defect) {
      acc.emplace(m, msg.from);
      continue;
    }
    if (!msg.action.sends()) continue;
    auto theirs = std::dynamic_pointer_cast<const ValReports>(msg.payload);
    if (!theirs) continue;
    // nothing a sender says about itself is taken
    for (const auto& [r, s] : theirs->accusations)
      if (s != msg.from && s != self_ && r < m && r >= m + 1 - rho_) acc.emplace(r, s);
  }
  acc.erase(acc.begin(), acc.lower_bound({m + 1 - rho_, -1}));
  reports_ = std::move(next);
}

void ValMachine::fingerprint(std::vector<std::int64_t>& out) const { reports_->fingerprint_relative(out, view_.round); }

MachinePtr sigma_val(AgentId self, const ProtocolContext& ctx) {
  return std::make_unique<ValMachine>(self, ctx, ValMachine::Style::Proportional);
}

MachinePtr safe_punisher(AgentId self, const ProtocolContext& ctx) {
  return std::make_unique<ValMachine>(self, ctx, ValMachine::Style::Active);
}

}  // namespace dynacct
