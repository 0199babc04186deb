#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dynacct {

using AgentId = int;   // 0-based
using Round = long;    // 1-based

using Edge = std::pair<AgentId, AgentId>;

/// Undirected simple graph of one round.
class RoundGraph {
 public:
  RoundGraph() = default;
  explicit RoundGraph(int n);
  RoundGraph(int n, const std::vector<Edge>& edges);

  int n() const { return static_cast<int>(adj_.size()); }
  void add_edge(AgentId a, AgentId b);
  bool has_edge(AgentId a, AgentId b) const;
  const std::vector<AgentId>& neighbors(AgentId a) const { return adj_.at(static_cast<std::size_t>(a)); }
  int degree(AgentId a) const { return static_cast<int>(neighbors(a).size()); }
  // Sorted, each pair with first < second.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  bool operator==(const RoundGraph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<AgentId>> adj_;
};

/// Eventually periodic evolving graph: prefix rounds, then the cycle forever.
struct EvolvingGraph {
  std::string name;
  std::vector<RoundGraph> prefix;
  std::vector<RoundGraph> cycle;

  int n() const;
  Round prefix_length() const { return static_cast<Round>(prefix.size()); }
  Round cycle_length() const { return static_cast<Round>(cycle.size()); }
  // Rounds needed to see every distinct round graph once.
  Round span() const { return prefix_length() + cycle_length(); }

  bool operator==(const EvolvingGraph& other) const {
    return prefix == other.prefix && cycle == other.cycle;
  }
};

const RoundGraph& graph_at(const EvolvingGraph& g, Round m);

EvolvingGraph constant_graph(const RoundGraph& g, std::string name = {});

enum class ObservationModel { NeighborsOnly, NeighborsAndDegrees };

std::string to_string(ObservationModel obs);
ObservationModel parse_observation(const std::string& text);

struct GraphFamily {
  int n = 0;
  std::vector<EvolvingGraph> members;
  ObservationModel observation = ObservationModel::NeighborsOnly;
  Round horizon = 1;

  // Throws InputError on broken invariants.
  void validate() const;
  std::size_t member_index(const std::string& name) const;
};

struct LocalView {
  AgentId agent = 0;
  Round round = 0;
  std::vector<AgentId> neighbors;                    // ascending
  std::optional<std::vector<int>> neighbor_degrees;  // aligned with neighbors

  int degree() const { return static_cast<int>(neighbors.size()); }
  bool has_neighbor(AgentId j) const;
  std::optional<int> degree_of(AgentId j) const;

  bool operator==(const LocalView& other) const = default;
};

LocalView local_view(const EvolvingGraph& g, AgentId i, Round m, ObservationModel obs);

}  // namespace dynacct
