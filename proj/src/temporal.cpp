#include "dynacct/temporal.hpp"

#include <stdexcept>

#include "dynacct/errors.hpp"

namespace dynacct {

std::vector<Round> knowledge_rounds(const EvolvingGraph& g, AgentId source, Round from, Round until,
                                    std::optional<AgentId> excluded) {
  const int n = g.n();
  std::vector<Round> known(static_cast<std::size_t>(n), kNever);
  known[static_cast<std::size_t>(source)] = from;
  int informed = 1;
  for (Round r = from + 1; r <= until && informed < n; ++r) {
    const RoundGraph& round = graph_at(g, r);
    for (auto [a, b] : round.edges()) {
      auto& ka = known[static_cast<std::size_t>(a)];
      auto& kb = known[static_cast<std::size_t>(b)];
      // one hop per round: only agents informed before r forward at r
      if (ka < r && kb == kNever && b != excluded) {
        kb = r;
        ++informed;
      } else if (kb < r && ka == kNever && a != excluded) {
        ka = r;
        ++informed;
      }
    }
  }
  return known;
}

bool causally_influences(const EvolvingGraph& g, AgentId j, Round m, AgentId l, Round m2) {
  if (m >= m2) return false;
  if (j == l) return true;
  return knowledge_rounds(g, j, m, m2 - 1)[static_cast<std::size_t>(l)] < m2;
}

bool causally_influences_excluding(const EvolvingGraph& g, AgentId i, AgentId j, Round m, AgentId l, Round m2) {
  if (i == j) throw std::invalid_argument("causally_influences_excluding requires i != j");
  if (m >= m2) return false;
  if (j == l) return true;
  return knowledge_rounds(g, j, m, m2 - 1, i)[static_cast<std::size_t>(l)] < m2;
}

std::set<Opportunity> punishment_opportunities(const EvolvingGraph& g, AgentId i, AgentId j, Round m, Round until) {
  if (!graph_at(g, m).has_edge(i, j))
    throw InputError("(" + std::to_string(i) + "," + std::to_string(j) + ") is not an edge at round " +
                     std::to_string(m));
  std::set<Opportunity> out;
  if (until <= m) return out;
  auto known = knowledge_rounds(g, j, m, until - 1, i);
  for (Round r = m + 1; r <= until; ++r)
    for (AgentId l : graph_at(g, r).neighbors(i))
      if (known[static_cast<std::size_t>(l)] < r) out.emplace(l, r);
  return out;
}

std::set<Opportunity> po_set(const EvolvingGraph& g, AgentId i, long rho, Round m) {
  if (rho < 1) throw std::invalid_argument("rho must be >= 1");
  std::set<Opportunity> out;
  const Round until = m + rho - 1;
  for (Round r = m; r < until; ++r)
    for (AgentId j : graph_at(g, r).neighbors(i)) {
      auto pos = punishment_opportunities(g, i, j, r, until);
      out.insert(pos.begin(), pos.end());
    }
  return out;
}

}  // namespace dynacct
