#include "dynacct/evolving_graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "dynacct/errors.hpp"

namespace dynacct {

RoundGraph::RoundGraph(int n) : adj_(static_cast<std::size_t>(n)) {}

RoundGraph::RoundGraph(int n, const std::vector<Edge>& edges) : RoundGraph(n) {
  for (auto [a, b] : edges) add_edge(a, b);
}

void RoundGraph::add_edge(AgentId a, AgentId b) {
  if (a == b) throw InputError("self-loop on agent " + std::to_string(a));
  if (a < 0 || b < 0 || a >= n() || b >= n())
    throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range for n=" +
                     std::to_string(n()));
  auto insert = [](std::vector<AgentId>& v, AgentId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  };
  insert(adj_[static_cast<std::size_t>(a)], b);
  insert(adj_[static_cast<std::size_t>(b)], a);
}

bool RoundGraph::has_edge(AgentId a, AgentId b) const {
  if (a < 0 || a >= n()) return false;
  const auto& v = adj_[static_cast<std::size_t>(a)];
  return std::binary_search(v.begin(), v.end(), b);
}

std::vector<Edge> RoundGraph::edges() const {
  std::vector<Edge> out;
  for (AgentId a = 0; a < n(); ++a)
    for (AgentId b : adj_[static_cast<std::size_t>(a)])
      if (a < b) out.emplace_back(a, b);
  return out;
}

std::size_t RoundGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& v : adj_) total += v.size();
  return total / 2;
}

int EvolvingGraph::n() const {
  if (!cycle.empty()) return cycle.front().n();
  if (!prefix.empty()) return prefix.front().n();
  return 0;
}

const RoundGraph& graph_at(const EvolvingGraph& g, Round m) {
  if (m < 1) throw std::invalid_argument("rounds are 1-indexed");
  if (g.cycle.empty()) throw std::invalid_argument("evolving graph has an empty cycle");
  Round p = g.prefix_length();
  if (m <= p) return g.prefix[static_cast<std::size_t>(m - 1)];
  return g.cycle[static_cast<std::size_t>((m - p - 1) % g.cycle_length())];
}

EvolvingGraph constant_graph(const RoundGraph& g, std::string name) {
  EvolvingGraph out;
  out.name = std::move(name);
  out.cycle.push_back(g);
  return out;
}

std::string to_string(ObservationModel obs) {
  return obs == ObservationModel::NeighborsOnly ? "neighbors" : "neighbors_degrees";
}

ObservationModel parse_observation(const std::string& text) {
  if (text == "neighbors") return ObservationModel::NeighborsOnly;
  if (text == "neighbors_degrees") return ObservationModel::NeighborsAndDegrees;
  throw InputError("unknown observation model '" + text + "'");
}

void GraphFamily::validate() const {
  if (n < 1) throw InputError("family needs n >= 1");
  if (members.empty()) throw InputError("family has no members");
  for (const auto& g : members) {
    if (g.cycle.empty()) throw InputError("member '" + g.name + "' has an empty cycle");
    for (const auto* part : {&g.prefix, &g.cycle})
      for (const auto& r : *part)
        if (r.n() != n) throw InputError("member '" + g.name + "' has a round graph with the wrong agent count");
    if (horizon < g.span())
      throw InputError("horizon " + std::to_string(horizon) + " shorter than prefix+cycle of member '" + g.name + "'");
  }
}

std::size_t GraphFamily::member_index(const std::string& name) const {
  for (std::size_t k = 0; k < members.size(); ++k)
    if (members[k].name == name) return k;
  throw InputError("no member named '" + name + "'");
}

bool LocalView::has_neighbor(AgentId j) const {
  return std::binary_search(neighbors.begin(), neighbors.end(), j);
}

std::optional<int> LocalView::degree_of(AgentId j) const {
  if (!neighbor_degrees) return std::nullopt;
  auto it = std::lower_bound(neighbors.begin(), neighbors.end(), j);
  if (it == neighbors.end() || *it != j) return std::nullopt;
  return (*neighbor_degrees)[static_cast<std::size_t>(it - neighbors.begin())];
}

LocalView local_view(const EvolvingGraph& g, AgentId i, Round m, ObservationModel obs) {
  const RoundGraph& r = graph_at(g, m);
  LocalView view;
  view.agent = i;
  view.round = m;
  view.neighbors = r.neighbors(i);
  if (obs == ObservationModel::NeighborsAndDegrees) {
    std::vector<int> degrees;
    degrees.reserve(view.neighbors.size());
    for (AgentId j : view.neighbors) degrees.push_back(r.degree(j));
    view.neighbor_degrees = std::move(degrees);
  }
  return view;
}

}  // namespace dynacct
