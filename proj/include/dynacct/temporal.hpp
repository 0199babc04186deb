#pragma once

#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dynacct/evolving_graph.hpp"

namespace dynacct {

inline constexpr Round kNever = std::numeric_limits<Round>::max();

/// Forward closure of the information held by `source` at the end of round `from`.
/// Entry l is the round at whose end l first holds it (kNever if not by `until`).
/// Information moves one hop per round. `excluded`, if set, never receives it.
std::vector<Round> knowledge_rounds(const EvolvingGraph& g, AgentId source, Round from, Round until,
                                    std::optional<AgentId> excluded = std::nullopt);

bool causally_influences(const EvolvingGraph& g, AgentId j, Round m, AgentId l, Round m2);

// Same closure without interference from i.
bool causally_influences_excluding(const EvolvingGraph& g, AgentId i, AgentId j, Round m, AgentId l, Round m2);

/// An i-edge (l, m'): i and l are neighbours in round m'.
using Opportunity = std::pair<AgentId, Round>;

// Later i-edges (l,m') with m < m' <= until that (j,m) reaches without i. Throws if (i,j) is not an edge at m.
std::set<Opportunity> punishment_opportunities(const EvolvingGraph& g, AgentId i, AgentId j, Round m, Round until);

// POs before m+rho of every i-edge from round m on.
std::set<Opportunity> po_set(const EvolvingGraph& g, AgentId i, long rho, Round m);

}  // namespace dynacct
