#pragma once

// Brute-force reference implementations written straight from the recursive definitions.
// They share nothing with the library beyond the graph containers and graph_at.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "dynacct/evolving_graph.hpp"

namespace oracle {

using dynacct::AgentId;
using dynacct::EvolvingGraph;
using dynacct::GraphFamily;
using dynacct::Round;
using dynacct::RoundGraph;

inline bool edge(const EvolvingGraph& g, AgentId a, AgentId b, Round m) {
  const RoundGraph& r = dynacct::graph_at(g, m);
  const auto& nb = r.neighbors(a);
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

/// (j,m) ~> (l,m2), optionally never relaying through `excl`:
/// m < m2 and either j == l or some j-edge (o,m'') with m < m'' and o != excl has (o,m'') ~> (l,m2).
class Influence {
 public:
  Influence(const EvolvingGraph& g, std::optional<AgentId> excl) : g_(g), excl_(excl) {}

  bool operator()(AgentId j, Round m, AgentId l, Round m2) {
    if (!(m < m2)) return false;
    if (j == l) return true;
    const auto key = std::make_tuple(j, m, l, m2);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool out = false;
    for (Round mm = m + 1; mm < m2 && !out; ++mm)
      for (AgentId o = 0; o < g_.n() && !out; ++o)
        if (o != j && (!excl_ || o != *excl_) && edge(g_, j, o, mm)) out = (*this)(o, mm, l, m2);
    memo_[key] = out;
    return out;
  }

 private:
  const EvolvingGraph& g_;
  std::optional<AgentId> excl_;
  std::map<std::tuple<AgentId, Round, AgentId, Round>, bool> memo_;
};

inline bool influences(const EvolvingGraph& g, AgentId j, Round m, AgentId l, Round m2) {
  return Influence(g, std::nullopt)(j, m, l, m2);
}

using Opp = std::pair<AgentId, Round>;

// i-edges (l,m') with m < m' <= until reached from (j,m) without i.
inline std::set<Opp> pos(const EvolvingGraph& g, AgentId i, AgentId j, Round m, Round until) {
  Influence inf(g, i);
  std::set<Opp> out;
  for (Round mm = m + 1; mm <= until; ++mm)
    for (AgentId l = 0; l < g.n(); ++l)
      if (l != i && edge(g, i, l, mm) && inf(j, m, l, mm)) out.emplace(l, mm);
  return out;
}

// POs earlier than m + rho, over all i-edges (j, m'') with m'' >= m.
inline std::set<Opp> po_set(const EvolvingGraph& g, AgentId i, long rho, Round m) {
  std::set<Opp> out;
  const Round last = m + rho - 1;
  for (Round mm = m; mm <= last; ++mm)
    for (AgentId j = 0; j < g.n(); ++j)
      if (j != i && edge(g, i, j, mm))
        for (const Opp& o : pos(g, i, j, mm, last)) out.insert(o);
  return out;
}

inline bool timely(const GraphFamily& f, long rho) {
  for (const auto& g : f.members)
    for (Round m = 1; m <= f.horizon; ++m)
      for (AgentId i = 0; i < f.n; ++i)
        for (AgentId j = 0; j < f.n; ++j)
          if (j != i && edge(g, i, j, m) && pos(g, i, j, m, m + rho - 1).empty()) return false;
  return true;
}

// The information agent j has about round m's topology: its neighbours, and their degrees if observed.
inline std::vector<int> info(const EvolvingGraph& g, AgentId j, Round m, bool degrees) {
  const RoundGraph& r = dynacct::graph_at(g, m);
  std::vector<int> out;
  for (AgentId o = 0; o < g.n(); ++o)
    if (o != j && edge(g, j, o, m)) {
      out.push_back(o);
      if (degrees) out.push_back(1000 + r.degree(o));
    }
  return out;
}

// Cone C^{m'} = {j : (j,m') ~> (i,m)}, with i itself at m' = m.
inline std::set<AgentId> cone(const EvolvingGraph& g, AgentId i, Round m, Round mm) {
  std::set<AgentId> c;
  Influence inf(g, std::nullopt);
  for (AgentId j = 0; j < g.n(); ++j)
    if ((mm == m && j == i) || inf(j, mm, i, m)) c.insert(j);
  return c;
}

inline bool indistinguishable(const EvolvingGraph& a, const EvolvingGraph& b, AgentId i, Round m, bool degrees) {
  for (Round mm = 1; mm <= m; ++mm) {
    const auto ca = cone(a, i, m, mm);
    if (ca != cone(b, i, m, mm)) return false;
    for (AgentId j : ca)
      if (info(a, j, mm, degrees) != info(b, j, mm, degrees)) return false;
  }
  return true;
}

// Does some pair (G1, G2) of members witness that round m is (G, i, rho)-indistinguishable?
inline bool pair_witnesses(const GraphFamily& f, std::size_t g, std::size_t a, std::size_t b, AgentId i, long rho,
                           Round m) {
  const bool deg = f.observation == dynacct::ObservationModel::NeighborsAndDegrees;
  const auto& base = f.members[g];
  std::size_t k = 0;
  for (AgentId j = 0; j < f.n; ++j)
    if (j != i && edge(base, i, j, m)) ++k;
  if (k == 0) return false;
  const auto pa = oracle::po_set(f.members[a], i, rho, m), pb = oracle::po_set(f.members[b], i, rho, m);
  for (std::size_t which : {a, b})
    for (const Opp& o : oracle::po_set(f.members[which], i, rho, m))
      if (!indistinguishable(f.members[which], base, o.first, o.second, deg)) return false;
  std::size_t common = 0;
  for (const Opp& o : pa) common += pb.count(o);
  if (common >= k) return false;
  std::set<Opp> uni = pa;
  uni.insert(pb.begin(), pb.end());
  return uni == oracle::po_set(base, i, rho, m);
}

inline bool indistinguishable_round(const GraphFamily& f, std::size_t g, AgentId i, long rho, Round m) {
  for (std::size_t a = 0; a < f.members.size(); ++a)
    for (std::size_t b = 0; b < f.members.size(); ++b)
      if (pair_witnesses(f, g, a, b, i, rho, m)) return true;
  return false;
}

/// Random eventually periodic family: n agents, prefix 0..2, cycle 1..3, horizon in [span, max_horizon].
inline GraphFamily random_family(std::mt19937_64& rng, int max_n = 5, Round max_horizon = 12, int max_members = 4) {
  std::uniform_int_distribution<int> n_d(2, max_n), mem_d(1, max_members), pre_d(0, 2), cyc_d(1, 3);
  std::uniform_real_distribution<double> p_d(0.2, 0.7), u(0.0, 1.0);
  GraphFamily f;
  f.n = n_d(rng);
  f.observation = u(rng) < 0.5 ? dynacct::ObservationModel::NeighborsOnly : dynacct::ObservationModel::NeighborsAndDegrees;
  const int members = mem_d(rng);
  const double p = p_d(rng);
  Round span = 1;
  for (int k = 0; k < members; ++k) {
    EvolvingGraph g;
    g.name = "g" + std::to_string(k);
    auto round = [&] {
      RoundGraph r(f.n);
      for (AgentId a = 0; a < f.n; ++a)
        for (AgentId b = a + 1; b < f.n; ++b)
          if (u(rng) < p) r.add_edge(a, b);
      return r;
    };
    const int pre = pre_d(rng), cyc = cyc_d(rng);
    for (int r = 0; r < pre; ++r) g.prefix.push_back(round());
    for (int r = 0; r < cyc; ++r) g.cycle.push_back(round());
    span = std::max(span, g.span());
    f.members.push_back(std::move(g));
  }
  std::uniform_int_distribution<Round> h_d(span, std::max(span, max_horizon));
  f.horizon = h_d(rng);
  return f;
}

}  // namespace oracle
