#include <gtest/gtest.h>

#include <set>

#include "dynacct/builtins.hpp"
#include "dynacct/errors.hpp"
#include "dynacct/scenario.hpp"

using namespace dynacct;

namespace {

const EvolvingGraph& member(const Scenario& s, const std::string& name) {
  for (const auto& g : s.family.members)
    if (g.name == name) return g;
  throw std::runtime_error("no member " + name);
}

std::set<Edge> edge_set(const RoundGraph& g) {
  const auto e = g.edges();
  return {e.begin(), e.end()};
}

const CheckSpec& check(const Scenario& s, const std::string& name) {
  for (const auto& c : s.checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Builtins, CatalogListsFiveScenarios) {
  const auto& cat = builtin_catalog();
  ASSERT_EQ(cat.size(), 5u);
  std::set<std::string> ids;
  for (const auto& b : cat) {
    ids.insert(b.id);
    EXPECT_TRUE(is_builtin(b.id));
    EXPECT_FALSE(b.description.empty());
    EXPECT_FALSE(b.anchor.empty());
  }
  EXPECT_EQ(ids, (std::set<std::string>{"fig2_ambiguous", "fig3_indist", "timely_violation", "ring_connectivity",
                                        "unsafe_three_agent"}));
  EXPECT_NE(cat[0].description.find("cut"), std::string::npos);
  EXPECT_NE(cat[0].description.find("{2,3}"), std::string::npos);
  EXPECT_FALSE(is_builtin("nope"));
  EXPECT_THROW(builtin_scenario("nope"), InputError);
}

TEST(Builtins, AllValidate) {
  for (const auto& b : builtin_catalog()) {
    const Scenario s = builtin_scenario(b.id);
    EXPECT_NO_THROW(s.validate()) << b.id;
    EXPECT_NO_THROW(s.config().validate()) << b.id;
    EXPECT_EQ(s.strategies.size(), static_cast<std::size_t>(s.family.n)) << b.id;
    EXPECT_FALSE(s.checks.empty()) << b.id;
  }
  for (const auto& s : gen_benchmark_scenarios()) EXPECT_NO_THROW(s.validate()) << s.name;
  for (const auto& s : val_benchmark_scenarios()) EXPECT_NO_THROW(s.validate()) << s.name;
}

TEST(Builtins, CutPairEdges) {
  const Scenario s = builtin_scenario("fig2_ambiguous");
  EXPECT_EQ(s.family.n, 5);
  EXPECT_EQ(s.rho, 3);
  const auto& g = member(s, "G");
  const auto& gp = member(s, "G'");
  EXPECT_EQ(edge_set(graph_at(g, 2)), (std::set<Edge>{{1, 3}}));
  EXPECT_EQ(edge_set(graph_at(gp, 2)), (std::set<Edge>{{1, 2}}));
  for (Round m : {1, 3}) EXPECT_EQ(graph_at(g, m), graph_at(gp, m)) << m;
  EXPECT_EQ(edge_set(graph_at(g, 3)), (std::set<Edge>{{0, 2}, {0, 3}}));
  // In every later round agent 0's edges separate {1,2} from {3,4}.
  for (Round m = 4; m <= 12; ++m)
    for (const auto* h : {&g, &gp}) {
      const RoundGraph& r = graph_at(*h, m);
      EXPECT_EQ(r.degree(0), 2);
      EXPECT_FALSE(r.has_edge(1, 3) || r.has_edge(1, 4) || r.has_edge(2, 3) || r.has_edge(2, 4)) << m;
    }
}

TEST(Builtins, ThreeGraphEdges) {
  const Scenario s = builtin_scenario("fig3_indist");
  EXPECT_EQ(s.family.observation, ObservationModel::NeighborsOnly);
  ASSERT_EQ(s.family.members.size(), 3u);
  EXPECT_EQ(edge_set(graph_at(member(s, "G1"), 3)), (std::set<Edge>{{0, 1}}));
  EXPECT_EQ(edge_set(graph_at(member(s, "G2"), 3)), (std::set<Edge>{{0, 2}}));
  EXPECT_EQ(edge_set(graph_at(member(s, "G3"), 3)), (std::set<Edge>{{0, 1}, {0, 2}}));
  for (const auto& g : s.family.members) {
    EXPECT_EQ(edge_set(graph_at(g, 1)), (std::set<Edge>{{0, 1}}));
    EXPECT_EQ(edge_set(graph_at(g, 2)), (std::set<Edge>{{1, 2}}));
  }
}

TEST(Builtins, TwoTrianglesWithBridge) {
  const Scenario s = builtin_scenario("timely_violation");
  const auto& g = s.family.members.at(0);
  EXPECT_TRUE(graph_at(g, 1).has_edge(2, 3));
  for (Round m = 2; m <= 10; ++m) {
    EXPECT_FALSE(graph_at(g, m).has_edge(2, 3));
    EXPECT_EQ(graph_at(g, m).edge_count(), 6u);
  }
}

TEST(Builtins, CheckOutcomes) {
  const auto outcome = [](const std::string& id, const std::string& name) {
    const Scenario s = builtin_scenario(id);
    return run_check(s.family, check(s, name)).holds;
  };
  EXPECT_TRUE(outcome("ring_connectivity", "connectivity"));
  EXPECT_TRUE(outcome("ring_connectivity", "timely"));
  EXPECT_FALSE(outcome("timely_violation", "timely"));
  EXPECT_FALSE(outcome("fig3_indist", "connectivity"));
  EXPECT_FALSE(outcome("fig3_indist", "eventual_dist"));
  EXPECT_TRUE(outcome("fig2_ambiguous", "ambiguous_po"));
  EXPECT_TRUE(outcome("unsafe_three_agent", "unsafe"));
}

TEST(ScenarioJson, RoundTripsEveryBuiltin) {
  for (const auto& b : builtin_catalog()) {
    const Scenario s = builtin_scenario(b.id);
    const auto j = scenario_to_json(s);
    const Scenario back = scenario_from_json(j);
    EXPECT_EQ(scenario_to_json(back), j) << b.id;
    EXPECT_EQ(back.config().family.members.size(), s.family.members.size());
    EXPECT_EQ(back.params.beta, s.params.beta);
  }
}

TEST(ScenarioJson, RejectsMalformedInput) {
  auto j = scenario_to_json(builtin_scenario("ring_connectivity"));
  auto bad_agent = j;
  bad_agent["strategies"][0]["agent"] = 4;
  EXPECT_THROW(scenario_from_json(bad_agent), InputError);
  auto bad_protocol = j;
  bad_protocol["strategies"][0]["strategy"] = "no_such_protocol";
  EXPECT_THROW(scenario_from_json(bad_protocol).config().validate(), InputError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), InputError);
}

TEST(ScenarioHorizon, TailBelowEpsilon) {
  const auto p = default_params(Mode::General, 4, 2);
  const Rational eps(1, 1000);
  const Round h = verification_horizon(p, 4, 10, eps);
  EXPECT_GT(h, 10);
  EXPECT_LE(tail_bound(p, 4, h - 10), eps);
}
