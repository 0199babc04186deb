#include "dynacct/game.hpp"

#include <stdexcept>

#include "dynacct/errors.hpp"

namespace dynacct {

std::string to_string(Mode mode) { return mode == Mode::Valuable ? "valuable" : "general"; }

Mode parse_mode(const std::string& text) {
  if (text == "valuable" || text == "Valuable") return Mode::Valuable;
  if (text == "general" || text == "General") return Mode::General;
  throw InputError("unknown utility mode '" + text + "'");
}

bool IndividualAction::sends() const {
  return kind == ActionKind::Cooperate || kind == ActionKind::Punish || kind == ActionKind::ProportionalPunish;
}

bool IndividualAction::punishes() const {
  return kind == ActionKind::Punish || (kind == ActionKind::ProportionalPunish && count > 0);
}

std::string IndividualAction::code() const {
  switch (kind) {
    case ActionKind::Cooperate: return "C";
    case ActionKind::Defect: return "D";
    case ActionKind::Punish: return "P";
    case ActionKind::ProportionalPunish: return "PP" + std::to_string(count);
    case ActionKind::AvoidPunishment: return "A";
  }
  return "?";
}

IndividualAction IndividualAction::parse(const std::string& code) {
  if (code == "C") return cooperate();
  if (code == "D") return defect();
  if (code == "P") return punish();
  if (code == "A") return avoid();
  if (code.size() > 2 && code.rfind("PP", 0) == 0) {
    const std::string digits = code.substr(2);
    if (digits.find_first_not_of("0123456789") == std::string::npos) return proportional(std::stoi(digits));
  }
  throw InputError("unknown action code '" + code + "'");
}

void check_legal(const IndividualAction& a, Mode mode, int n) {
  switch (a.kind) {
    case ActionKind::Cooperate:
    case ActionKind::Defect: return;
    case ActionKind::Punish:
      if (mode != Mode::General) throw InputError("Punish is only available in general exchanges");
      return;
    case ActionKind::ProportionalPunish:
      if (mode != Mode::Valuable) throw InputError("ProportionalPunish is only available in valuable exchanges");
      if (a.count < 0 || a.count > n - 1)
        throw InputError("ProportionalPunish count " + std::to_string(a.count) + " outside [0, n-1]");
      return;
    case ActionKind::AvoidPunishment:
      if (mode != Mode::Valuable) throw InputError("AvoidPunishment is only available in valuable exchanges");
      return;
  }
}

std::vector<IndividualAction> legal_actions(Mode mode, int n) {
  std::vector<IndividualAction> out{IndividualAction::cooperate(), IndividualAction::defect()};
  if (mode == Mode::General) {
    out.push_back(IndividualAction::punish());
  } else {
    for (int c = 1; c <= n - 1; ++c) out.push_back(IndividualAction::proportional(c));
    out.push_back(IndividualAction::avoid());
  }
  return out;
}

const IndividualAction& Action::toward(AgentId j) const {
  auto it = per_neighbor.find(j);
  if (it == per_neighbor.end())
    throw std::out_of_range("agent " + std::to_string(agent) + " has no action toward " + std::to_string(j));
  return it->second;
}

Rational UtilityParams::y(int n) const { return beta + alpha + 1 + (n - 1) * pi; }

void UtilityParams::validate(int n, std::optional<long> rho) const {
  if (!(delta > 0 && delta < 1)) throw InputError("delta must lie in (0,1)");
  if (alpha < 0 || pi < 0 || beta < 0) throw InputError("beta, alpha and pi must be non-negative");
  if (mode == Mode::Valuable) {
    if (!rho) throw InputError("valuable exchanges need the punishment bound rho");
    if (!(beta > 1 + alpha + *rho * pi))
      throw InputError("valuable exchanges need beta > 1 + alpha + rho*pi");
    if (!(pi > n)) throw InputError("valuable exchanges need pi > n");
  } else {
    if (!(beta > 1 + alpha)) throw InputError("general exchanges need beta > 1 + alpha");
    if (!(pi >= beta)) throw InputError("general exchanges need pi >= beta");
  }
}

UtilityParams default_params(Mode mode, int n, long rho) {
  UtilityParams p;
  p.mode = mode;
  p.delta = Rational(99, 100);
  if (mode == Mode::Valuable) {
    p.alpha = 0;
    p.pi = n + 1;
    p.beta = 1 + p.alpha + rho * p.pi + 1;
  } else {
    p.beta = Rational(6, 5);
    p.alpha = Rational(1, 10);
    p.pi = Rational(6, 5);
  }
  return p;
}

Rational edge_utility(const IndividualAction& mine, const IndividualAction& theirs, const UtilityParams& params) {
  Rational u = 0;
  if (mine.kind == ActionKind::AvoidPunishment) return u;
  if (theirs.sends()) u += params.beta - params.alpha;
  if (mine.sends()) u -= 1;
  if (theirs.kind == ActionKind::ProportionalPunish) u -= theirs.count * params.pi;
  if (theirs.kind == ActionKind::Punish) u -= params.pi;
  return u;
}

Rational round_utility(AgentId i, const ActionProfile& profile, const RoundGraph& graph, const UtilityParams& params) {
  Rational total = 0;
  const Action& mine = profile.actions.at(static_cast<std::size_t>(i));
  for (AgentId j : graph.neighbors(i)) {
    const Action& theirs = profile.actions.at(static_cast<std::size_t>(j));
    total += edge_utility(mine.toward(j), theirs.toward(i), params);
  }
  return total;
}

const Rational& Trace::utility(AgentId i, Round m) const {
  return utilities.at(static_cast<std::size_t>(m - 1)).at(static_cast<std::size_t>(i));
}

void check_history(const History& h, const UtilityParams& params) {
  if (!h.graph) throw InputError("history has no graph");
  const int n = h.graph->n();
  for (std::size_t k = 0; k < h.profiles.size(); ++k) {
    const ActionProfile& p = h.profiles[k];
    const Round m = static_cast<Round>(k + 1);
    if (p.round != m) throw InputError("profile rounds must be consecutive from 1");
    if (static_cast<int>(p.actions.size()) != n) throw InputError("profile must hold one action per agent");
    const RoundGraph& g = graph_at(*h.graph, m);
    for (AgentId i = 0; i < n; ++i) {
      const Action& a = p.actions[static_cast<std::size_t>(i)];
      if (a.agent != i || a.round != m) throw InputError("action labels disagree with the profile");
      if (a.per_neighbor.size() != g.neighbors(i).size())
        throw InputError("action of agent " + std::to_string(i) + " at round " + std::to_string(m) +
                         " does not match its neighbour set");
      for (const auto& [j, act] : a.per_neighbor) {
        if (!g.has_edge(i, j))
          throw InputError("agent " + std::to_string(i) + " acts toward non-neighbour " + std::to_string(j));
        check_legal(act, params.mode, n);
      }
    }
  }
}

Rational discounted_utility(const Trace& t, AgentId i, Round from, const UtilityParams& params) {
  if (from < 1) throw std::invalid_argument("from must be >= 1");
  Rational total = 0, weight = 1;
  for (Round m = from; m <= t.rounds(); ++m) {
    total += weight * round_utility(i, t.history.profiles[static_cast<std::size_t>(m - 1)], graph_at(*t.history.graph, m),
                                    params);
    weight *= params.delta;
  }
  return total;
}

Rational tail_bound(const UtilityParams& params, int n, Round horizon) {
  if (horizon < 0) horizon = 0;
  return pow(params.delta, horizon) * params.y(n) * n / (1 - params.delta);
}

Round horizon_for_tail(const UtilityParams& params, int n, const Rational& eps) {
  Rational bound = params.y(n) * n / (1 - params.delta);
  Round h = 0;
  while (bound >= eps) {
    bound *= params.delta;
    ++h;
  }
  return h;
}

}  // namespace dynacct
