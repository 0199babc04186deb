#include "dynacct/builtins.hpp"

#include <algorithm>

#include "dynacct/errors.hpp"

namespace dynacct {

namespace {

RoundGraph rg(int n, std::vector<Edge> edges) { return RoundGraph(n, edges); }

EvolvingGraph member(std::string name, std::vector<RoundGraph> prefix, std::vector<RoundGraph> cycle) {
  EvolvingGraph g;
  g.name = std::move(name);
  g.prefix = std::move(prefix);
  g.cycle = std::move(cycle);
  return g;
}

GraphFamily family(int n, std::vector<EvolvingGraph> members, ObservationModel obs) {
  GraphFamily f;
  f.n = n;
  f.observation = obs;
  Round span = 1;
  for (const auto& g : members) span = std::max(span, g.span());
  f.horizon = span + 2 * static_cast<Round>(n) * 3;  // room for the checkers' forward scans
  f.members = std::move(members);
  return f;
}

Scenario base(std::string name, std::string description, GraphFamily f, std::string graph, long rho, Mode mode,
              const std::string& protocol) {
  Scenario s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.family = std::move(f);
  s.member = std::move(graph);
  s.rho = rho;
  s.params = default_params(mode, s.family.n, rho);
  s.strategies.assign(static_cast<std::size_t>(s.family.n), StrategySpec::honest(protocol));
  const EvolvingGraph& g = s.family.members.at(s.family.member_index(s.member));
  s.horizon = verification_horizon(s.params, s.family.n, g.span() + 2 * g.cycle_length() * s.family.n,
                                   Rational(1, 1000));
  return s;
}

StrategySpec with(const std::string& protocol, DeviationSpec d) {
  StrategySpec s = StrategySpec::honest(protocol);
  s.deviation = std::move(d);
  return s;
}

// Agents 1..5 in the construction are ids 0..4.
Scenario fig2() {
  const int n = 5;
  // after round 3 the line 3-2-1-5-4 alternates with 2-3-1-4-5 (agents numbered from 1)
  const RoundGraph b = rg(n, {{2, 1}, {1, 0}, {0, 4}, {4, 3}});
  const RoundGraph a = rg(n, {{1, 2}, {2, 0}, {0, 3}, {3, 4}});
  const RoundGraph r1 = rg(n, {{0, 1}}), r3 = rg(n, {{0, 2}, {0, 3}});
  GraphFamily f = family(n,
                         {member("G", {r1, rg(n, {{1, 3}}), r3}, {b, a}),
                          member("G'", {r1, rg(n, {{1, 2}}), r3}, {b, a})},
                         ObservationModel::NeighborsOnly);
  Scenario s = base("fig2_ambiguous",
                    "Two five-agent graphs that agent 1 cannot tell apart at round 3; in G' its edges cut {2,3} from "
                    "{4,5}. Agent ids are the 1-based labels minus one. rho = 3 is inferred from the round structure.",
                    std::move(f), "G'", 3, Mode::General, "minimax_punisher");
  DeviationSpec d;
  d.kind = DeviationSpec::Kind::DualEvasive;
  d.dual.n1 = {1, 2};
  d.dual.n2 = {3, 4};
  d.dual.defections = {{1, 1}};
  s.candidates.push_back({0, "dual_evasive", with("minimax_punisher", d)});
  s.verify_agents = {0};
  CheckSpec amb;
  amb.name = "ambiguous_po";
  amb.member = "G";
  amb.agent = 0;
  amb.partner = 3;
  amb.round = 3;
  s.checks.push_back(amb);
  return s;
}

Scenario fig3() {
  const int n = 3;
  const RoundGraph r1 = rg(n, {{0, 1}}), r2 = rg(n, {{1, 2}});
  GraphFamily f = family(n,
                         {member("G1", {}, {r1, r2, rg(n, {{0, 1}})}),
                          member("G2", {}, {r1, r2, rg(n, {{0, 2}})}),
                          member("G3", {}, {r1, r2, rg(n, {{0, 1}, {0, 2}})})},
                         ObservationModel::NeighborsOnly);
  f.horizon = 9;
  Scenario s = base("fig3_indist",
                    "Three agents and three graphs that differ only in agent 1's round-3 edges; under neighbour-only "
                    "observation G3 looks like G1 to agent 2 and like G2 to agent 3.",
                    std::move(f), "G3", 3, Mode::General, "safe_punisher");
  DeviationSpec d;
  d.kind = DeviationSpec::Kind::AlwaysDefectUntil;
  d.round = 1;
  s.candidates.push_back({0, "always_defect_until", with("safe_punisher", d)});
  s.verify_agents = {0};
  CheckSpec ev;
  ev.name = "eventual_dist";
  ev.rho = 3;
  ev.m_star = 0;
  s.checks.push_back(ev);
  CheckSpec conn;
  conn.name = "connectivity";
  s.checks.push_back(conn);
  return s;
}

std::vector<Edge> triangle(AgentId a, AgentId b, AgentId c) { return {{a, b}, {b, c}, {a, c}}; }

Scenario timely_violation() {
  const int n = 6;
  std::vector<Edge> cliques = triangle(0, 1, 2);
  for (const Edge& e : triangle(3, 4, 5)) cliques.push_back(e);
  std::vector<Edge> bridged = cliques;
  bridged.emplace_back(2, 3);
  GraphFamily f = family(n, {member("bridge", {rg(n, bridged)}, {rg(n, cliques)})}, ObservationModel::NeighborsOnly);
  Scenario s = base("timely_violation",
                    "Two triangles that meet through a single bridge edge in round 1 only; a defection across the "
                    "bridge can never be punished in time.",
                    std::move(f), "bridge", 2, Mode::Valuable, "sigma_val");
  DeviationSpec d;
  d.kind = DeviationSpec::Kind::SingleEvasive;
  d.target = 3;
  d.round = 1;
  s.candidates.push_back({2, "single_evasive", with("sigma_val", d)});
  s.verify_agents = {2};
  CheckSpec t;
  t.name = "timely";
  t.rho = 2;
  s.checks.push_back(t);
  return s;
}

Scenario ring() {
  const int n = 4;
  GraphFamily f = family(n, {member("ring", {}, {rg(n, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})})},
                         ObservationModel::NeighborsAndDegrees);
  Scenario s = base("ring_connectivity",
                    "Constant four-agent ring with neighbour degrees observed; removing any agent's edges leaves the "
                    "rest connected.",
                    std::move(f), "ring", 2, Mode::General, "sigma_gen");
  CheckSpec conn;
  conn.name = "connectivity";
  s.checks.push_back(conn);
  CheckSpec t;
  t.name = "timely";
  t.rho = 4;
  s.checks.push_back(t);
  return s;
}

Scenario unsafe() {
  const int n = 3;
  GraphFamily f = family(n, {member("unsafe", {rg(n, {{0, 1}, {0, 2}}), rg(n, {{1, 2}}), rg(n, {{0, 2}})}, {rg(n, {{0, 1}})})},
                         ObservationModel::NeighborsOnly);
  Scenario s = base("unsafe_three_agent",
                    "Agent 1 meets 2 and 3 in round 1, 2 meets 3 in round rho-1 and 3 meets 1 in round rho, after "
                    "which 3 never interacts again (rho = 3).",
                    std::move(f), "unsafe", 3, Mode::General, "minimax_punisher");
  DeviationSpec first;
  first.kind = DeviationSpec::Kind::OneShot;
  first.round = 1;
  first.override_action = ActionTemplate::defect_all();
  s.strategies[0] = with("minimax_punisher", first);
  DeviationSpec second;
  second.kind = DeviationSpec::Kind::OneShot;
  second.round = 2;
  second.override_action.per_neighbor[2] = IndividualAction::defect();
  s.strategies[1] = with("minimax_punisher", second);
  DeviationSpec lenient;
  lenient.kind = DeviationSpec::Kind::LenientEvasive;
  lenient.lenient = LenientScript{true, 0, 1, 2, 3};
  s.candidates.push_back({2, "lenient_evasive", with("minimax_punisher", lenient)});
  s.verify_agents = {2};
  CheckSpec u;
  u.name = "unsafe";
  u.rho = 3;
  s.checks.push_back(u);
  return s;
}

}  // namespace

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> catalog = {
      {"fig2_ambiguous", "two-graph cut construction: agent 1's edges separate N1 = {2,3} from N2 = {4,5} in G'",
       "ambiguous punishment opportunities"},
      {"fig3_indist", "G3 is indistinguishable from G1 (G2) to agent 2 (3) at round 3 under neighbour-only views",
       "indistinguishable rounds"},
      {"timely_violation", "two triangles joined by a one-off bridge; sigma_val with a single evasive defection",
       "timely punishments, necessity"},
      {"ring_connectivity", "four-agent ring with degree observation running sigma_gen",
       "connectivity restriction, pending punishments"},
      {"unsafe_three_agent", "three agents where 3 must relay 2's defection to 1 and then falls silent",
       "unsafe defections"},
  };
  return catalog;
}

bool is_builtin(const std::string& id) {
  const auto& c = builtin_catalog();
  return std::any_of(c.begin(), c.end(), [&](const BuiltinInfo& b) { return b.id == id; });
}

Scenario builtin_scenario(const std::string& id) {
  if (id == "fig2_ambiguous") return fig2();
  if (id == "fig3_indist") return fig3();
  if (id == "timely_violation") return timely_violation();
  if (id == "ring_connectivity") return ring();
  if (id == "unsafe_three_agent") return unsafe();
  throw InputError("unknown builtin scenario '" + id + "'");
}

std::vector<Scenario> gen_benchmark_scenarios() {
  auto make = [](std::string name, int n, std::vector<RoundGraph> cycle) {
    GraphFamily f = family(n, {member(name, {}, std::move(cycle))}, ObservationModel::NeighborsAndDegrees);
    return base(name, "sigma_gen benchmark", std::move(f), name, 2, Mode::General, "sigma_gen");
  };
  const std::vector<Edge> c4 = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  auto plus = [](std::vector<Edge> e, Edge x) {
    e.push_back(x);
    return e;
  };
  const std::vector<Edge> k4 = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return {
      make("k3", 3, {rg(3, {{0, 1}, {1, 2}, {0, 2}})}),
      make("ring_chord", 4, {rg(4, plus(c4, {0, 2}))}),
      make("k4", 4, {rg(4, k4)}),
      make("rotating", 4, {rg(4, plus(c4, {0, 2})), rg(4, plus(c4, {1, 3})), rg(4, k4)}),
  };
}

std::vector<Scenario> val_benchmark_scenarios() {
  auto make = [](std::string name, int n, long rho, std::vector<RoundGraph> cycle) {
    GraphFamily f = family(n, {member(name, {}, std::move(cycle))}, ObservationModel::NeighborsOnly);
    return base(name, "sigma_val benchmark", std::move(f), name, rho, Mode::Valuable, "sigma_val");
  };
  return {
      make("ring4", 4, 2, {rg(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})}),
      make("matchings", 4, 3, {rg(4, {{0, 1}, {2, 3}}), rg(4, {{0, 2}, {1, 3}})}),
  };
}

}  // namespace dynacct
