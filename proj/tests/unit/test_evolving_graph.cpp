#include <gtest/gtest.h>

#include <random>

#include "dynacct/errors.hpp"
#include "dynacct/evolving_graph.hpp"
#include "dynacct/temporal.hpp"
#include "oracles/oracles.hpp"

using namespace dynacct;

namespace {

EvolvingGraph make(std::vector<RoundGraph> prefix, std::vector<RoundGraph> cycle) {
  EvolvingGraph g;
  g.prefix = std::move(prefix);
  g.cycle = std::move(cycle);
  return g;
}

}  // namespace

TEST(RoundGraph, EdgesAreUndirectedAndSorted) {
  RoundGraph g(4, {{2, 1}, {0, 3}});
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_TRUE(g.has_edge(3, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 3}, {1, 2}}));
  EXPECT_EQ(g.degree(0), 1);
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(RoundGraph, RejectsLoopsAndOutOfRange) {
  RoundGraph g(3);
  EXPECT_ANY_THROW(g.add_edge(1, 1));
  EXPECT_ANY_THROW(g.add_edge(0, 3));
}

TEST(EvolvingGraph, PrefixThenCycle) {
  const RoundGraph a(3, {{0, 1}}), b(3, {{1, 2}}), c(3, {{0, 2}});
  const auto g = make({a}, {b, c});
  EXPECT_EQ(graph_at(g, 1), a);
  EXPECT_EQ(graph_at(g, 2), b);
  EXPECT_EQ(graph_at(g, 3), c);
  EXPECT_EQ(graph_at(g, 4), b);
  EXPECT_EQ(graph_at(g, 5), c);
  EXPECT_EQ(graph_at(g, 100), b);
  EXPECT_EQ(g.span(), 3);
}

TEST(EvolvingGraph, ConstantGraphRepeats) {
  const RoundGraph r(3, {{0, 1}, {1, 2}});
  const auto g = constant_graph(r, "line");
  for (Round m = 1; m <= 5; ++m) EXPECT_EQ(graph_at(g, m), r);
}

TEST(LocalView, DegreesOnlyUnderDegreeObservation) {
  const auto g = constant_graph(RoundGraph(4, {{0, 1}, {1, 2}, {1, 3}}));
  const auto plain = local_view(g, 0, 1, ObservationModel::NeighborsOnly);
  EXPECT_EQ(plain.neighbors, std::vector<AgentId>{1});
  EXPECT_FALSE(plain.neighbor_degrees.has_value());
  const auto deg = local_view(g, 0, 1, ObservationModel::NeighborsAndDegrees);
  ASSERT_TRUE(deg.neighbor_degrees.has_value());
  EXPECT_EQ(*deg.neighbor_degrees, std::vector<int>{3});
  EXPECT_EQ(deg.degree_of(1), 3);
}

TEST(CausalInfluence, OneHopPerRound) {
  // 0-1 and 1-2 in the same round: 0's information cannot reach 2 in that round.
  const RoundGraph both(3, {{0, 1}, {1, 2}});
  const auto g = make({both, RoundGraph(3)}, {RoundGraph(3, {{1, 2}})});
  EXPECT_TRUE(causally_influences(g, 0, 0, 1, 2));
  EXPECT_FALSE(causally_influences(g, 0, 0, 2, 2));
  EXPECT_TRUE(causally_influences(g, 0, 0, 2, 4));  // round 1 to 1, round 3 to 2
  EXPECT_FALSE(causally_influences(g, 0, 0, 2, 3));
}

TEST(CausalInfluence, NeedsStrictlyLaterRound) {
  const auto g = constant_graph(RoundGraph(2, {{0, 1}}));
  EXPECT_FALSE(causally_influences(g, 0, 3, 0, 3));
  EXPECT_TRUE(causally_influences(g, 0, 3, 0, 4));
  EXPECT_FALSE(causally_influences(g, 0, 3, 1, 4));  // the round-4 edge is not between 3 and 4
  EXPECT_TRUE(causally_influences(g, 0, 3, 1, 5));
}

TEST(CausalInfluence, ExcludedAgentBlocksRelay) {
  // Only path from 1 to 2 goes through 0.
  const auto g = make({RoundGraph(3, {{0, 1}}), RoundGraph(3, {{0, 2}})}, {RoundGraph(3)});
  EXPECT_TRUE(causally_influences(g, 1, 0, 2, 3));
  EXPECT_FALSE(causally_influences_excluding(g, 0, 1, 0, 2, 3));
  EXPECT_THROW(causally_influences_excluding(g, 0, 0, 0, 2, 3), std::invalid_argument);
}

TEST(PunishmentOpportunities, RequireAnEdge) {
  const auto g = constant_graph(RoundGraph(3, {{0, 1}}));
  EXPECT_THROW(punishment_opportunities(g, 0, 2, 1, 5), InputError);
}

TEST(PunishmentOpportunities, TriangleDerived) {
  // Triangle every round: (1,m) is answered by both neighbours in round m+1.
  const auto g = constant_graph(RoundGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
  const auto po = punishment_opportunities(g, 0, 1, 1, 3);
  EXPECT_EQ(po, (std::set<Opportunity>{{1, 2}, {2, 3}, {1, 3}}));
}

TEST(PoSet, WindowOfRho) {
  const auto g = constant_graph(RoundGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
  EXPECT_TRUE(po_set(g, 0, 1, 4).empty());
  EXPECT_EQ(po_set(g, 0, 2, 4), (std::set<Opportunity>{{1, 5}, {2, 5}}));
  EXPECT_THROW(po_set(g, 0, 0, 1), std::invalid_argument);
}

class TemporalOracle : public ::testing::TestWithParam<int> {};

TEST_P(TemporalOracle, MatchesRecursiveDefinition) {
  std::mt19937_64 rng(1000 + static_cast<unsigned>(GetParam()));
  const GraphFamily f = oracle::random_family(rng, 5, 10, 2);
  for (const auto& g : f.members) {
    for (Round m = 1; m <= f.horizon; ++m)
      for (AgentId j = 0; j < f.n; ++j)
        for (AgentId l = 0; l < f.n; ++l)
          for (Round m2 = 1; m2 <= f.horizon; ++m2) {
            ASSERT_EQ(causally_influences(g, j, m, l, m2), oracle::influences(g, j, m, l, m2));
            for (AgentId i = 0; i < f.n; ++i)
              if (i != j)
                ASSERT_EQ(causally_influences_excluding(g, i, j, m, l, m2),
                          oracle::Influence(g, i)(j, m, l, m2));
          }
    for (AgentId i = 0; i < f.n; ++i)
      for (Round m = 1; m <= f.horizon; ++m) {
        for (AgentId j : graph_at(g, m).neighbors(i))
          ASSERT_EQ(punishment_opportunities(g, i, j, m, f.horizon), oracle::pos(g, i, j, m, f.horizon));
        for (long rho = 1; rho <= 4; ++rho) ASSERT_EQ(po_set(g, i, rho, m), oracle::po_set(g, i, rho, m));
      }
  }
}

INSTANTIATE_TEST_SUITE_P(RandomFamilies, TemporalOracle, ::testing::Range(0, 25));
