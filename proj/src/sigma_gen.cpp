#include "dynacct/sigma_gen.hpp"

#include <algorithm>

#include "dynacct/errors.hpp"

namespace dynacct {

namespace {

std::size_t residue(Round r, int n) { return static_cast<std::size_t>(((r % n) + n) % n); }

}  // namespace

int GenTables::pending(AgentId subject, Round round) const {
  return pend[static_cast<std::size_t>(subject) * static_cast<std::size_t>(n) + residue(round, n)];
}

void GenTables::fingerprint(std::vector<std::int64_t>& out) const {
  out.insert(out.end(), pend.begin(), pend.end());
  out.push_back(static_cast<std::int64_t>(acc.size()));
  for (const auto& [key, status] : acc) {
    out.push_back(std::get<0>(key));
    out.push_back(std::get<1>(key));
    out.push_back(std::get<2>(key));
    out.push_back(status == ReportStatus::Defected ? 1 : 0);
  }
}

GenMachine::GenMachine(AgentId self, const ProtocolContext& ctx, GenMutation mutation)
    : self_(self), n_(ctx.n), mutation_(mutation), tables_(std::make_shared<GenTables>()) {
  if (ctx.mode != Mode::General) throw InputError("sigma_gen requires general exchanges");
  if (ctx.observation != ObservationModel::NeighborsAndDegrees)
    throw InputError("sigma_gen requires the neighbour-degree observation model");
  tables_->n = n_;
  tables_->pend.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
}

void GenMachine::observe(const LocalView& view) {
  if (!view.neighbor_degrees) throw InputError("sigma_gen needs neighbour degrees in the local view");
  view_ = view;
}

Decision GenMachine::decide() const {
  Decision d;
  for (std::size_t k = 0; k < view_.neighbors.size(); ++k) {
    const AgentId j = view_.neighbors[k];
    const int deg = (*view_.neighbor_degrees)[k];
    const int pend = tables_->pending(j, view_.round);
    Rational p = pend >= deg ? Rational(1) : Rational(pend, deg);
    Draw draw{j, {}};
    if (p > 0) draw.support.emplace_back(IndividualAction::punish(), p);
    if (p < 1) draw.support.emplace_back(IndividualAction::cooperate(), 1 - p);
    d.draws.push_back(std::move(draw));
  }
  return d;
}

Payload GenMachine::payload_for(AgentId) const { return tables_; }

std::optional<ReportStatus> GenMachine::report(AgentId reporter, AgentId subject, Round round) const {
  auto it = tables_->acc.find({round, subject, reporter});
  if (it == tables_->acc.end()) return std::nullopt;
  return it->second;
}

void GenMachine::record(const RoundOutcome& outcome) {
  const Round m = outcome.round;
  const int n = n_;
  auto next = std::make_shared<GenTables>(*tables_);
  auto& pend = next->pend;
  auto& acc = next->acc;
  auto slot = [&](AgentId subject, Round r) -> int& {
    return pend[static_cast<std::size_t>(subject) * static_cast<std::size_t>(n) + residue(r, n)];
  };

  // Senders are visited in ascending id, so a report slot is filled from the lowest-id sender.
  for (const auto& msg : outcome.received) {
    const AgentId s = msg.from;
    if (msg.action.kind == ActionKind::Defect) {
      acc[{m, s, self_}] = ReportStatus::Defected;
      continue;
    }
    acc[{m, s, self_}] = ReportStatus::Clean;
    if (!msg.action.sends()) continue;
    auto theirs = std::dynamic_pointer_cast<const GenTables>(msg.payload);
    if (!theirs || theirs->n != n) continue;
    for (AgentId x = 0; x < n; ++x) {
      if (x == self_ || x == s) continue;
      for (Round r = std::max<Round>(1, m - n + 1); r <= m - 1; ++r) {
        int v = std::max(slot(x, r), theirs->pending(x, r));
        if (mutation_.cap_pending) v = std::min(v, n - 1);
        slot(x, r) = std::max(v, 0);
      }
    }
    for (const auto& [key, status] : theirs->acc) {
      const auto [r, subject, reporter] = key;
      if (r < m - n + 1 || r > m - 1) continue;
      if (subject == s || reporter == self_) continue;
      acc.emplace(key, status);
    }
  }

  if (m >= n) {
    const Round r0 = m - n + 1;
    for (AgentId x = 0; x < n; ++x) {
      if (x == self_) continue;
      int deg = 0;
      bool defected = false;
      for (auto it = acc.lower_bound({r0, x, -1}); it != acc.end() && std::get<0>(it->first) == r0 &&
                                                   std::get<1>(it->first) == x;
           ++it) {
        ++deg;
        defected = defected || it->second == ReportStatus::Defected;
      }
      int v = slot(x, r0);
      if (mutation_.drain) v = std::max(0, v - deg);
      if (defected) v += deg;
      if (mutation_.cap_pending) v = std::min(v, n - 1);
      slot(x, m + 1) = v;  // same residue as r0
    }
  }
  acc.erase(acc.begin(), acc.lower_bound({m - n + 2, -1, -1}));
  tables_ = std::move(next);
}

void GenMachine::fingerprint(std::vector<std::int64_t>& out) const {
  // relative to the current round: pend from round now+1 backwards, reports by age
  const Round now = view_.round;
  const GenTables& t = *tables_;
  out.push_back(std::min<Round>(now, n_));
  for (AgentId x = 0; x < n_; ++x)
    for (Round k = 0; k < n_; ++k) out.push_back(t.pending(x, now + 1 - k));
  out.push_back(static_cast<std::int64_t>(t.acc.size()));
  for (const auto& [key, status] : t.acc) {
    out.push_back(now - std::get<0>(key));
    out.push_back(std::get<1>(key));
    out.push_back(std::get<2>(key));
    out.push_back(status == ReportStatus::Defected ? 1 : 0);
  }
}

std::size_t GenMachine::state_size() const { return tables_->pend.size() + tables_->acc.size(); }

MachinePtr sigma_gen(AgentId self, const ProtocolContext& ctx, GenMutation mutation) {
  return std::make_unique<GenMachine>(self, ctx, mutation);
}

}  // namespace dynacct
