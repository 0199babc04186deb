#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynacct/evolving_graph.hpp"
#include "dynacct/temporal.hpp"

namespace dynacct {

struct Counterexample {
  std::size_t member = 0;
  AgentId agent = 0;
  std::optional<AgentId> partner;  // the other endpoint of the offending i-edge, if any
  Round round = 0;
  std::string detail;
};

struct FamilyVerdict {
  bool holds = false;
  std::optional<long> certificate;
  std::optional<Counterexample> counterexample;
};

nlohmann::json to_json(const FamilyVerdict& v, const GraphFamily& f);

FamilyVerdict check_timely_punishments(const GraphFamily& f, long rho);

// Smallest rho in [1, max_rho] for which timeliness holds, if any.
std::optional<long> minimal_timely_bound(const GraphFamily& f, long max_rho);

FamilyVerdict check_connectivity_restriction(const GraphFamily& f);

bool indistinguishable_at(const EvolvingGraph& g, const EvolvingGraph& g2, AgentId i, Round m, ObservationModel obs);

struct IndistinguishableWitness {
  std::size_t first = 0;
  std::size_t second = 0;
  std::set<Opportunity> po_first;
  std::set<Opportunity> po_second;
};

std::optional<IndistinguishableWitness> is_indistinguishable_round(const GraphFamily& f, std::size_t g, AgentId i,
                                                                   long rho, Round m);

FamilyVerdict check_eventual_distinguishability(const GraphFamily& f, long rho, Round m_star);

struct AmbiguityWitness {
  std::size_t member = 0;
  std::vector<AgentId> n1;
  std::vector<AgentId> n2;
};

inline constexpr int kPartitionSearchCap = 16;

std::optional<AmbiguityWitness> is_ambiguous_po(const GraphFamily& f, std::size_t g, AgentId i, AgentId j, Round m,
                                                int max_agents = kPartitionSearchCap);

struct UnsafeWitness {
  AgentId i = 0, j = 0, l = 0;
  Round m = 0, m1 = 0, m2 = 0;
};

std::optional<UnsafeWitness> is_unsafe(const EvolvingGraph& g, long rho, Round horizon);

}  // namespace dynacct
