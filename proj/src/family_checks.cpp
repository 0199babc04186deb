#include "dynacct/family_checks.hpp"

#include <algorithm>
#include <numeric>

#include "dynacct/errors.hpp"

namespace dynacct {

namespace {

Counterexample make_counterexample(std::size_t member, AgentId agent, std::optional<AgentId> partner, Round round,
                                   std::string detail) {
  Counterexample c;
  c.member = member;
  c.agent = agent;
  c.partner = partner;
  c.round = round;
  c.detail = std::move(detail);
  return c;
}

FamilyVerdict failing(Counterexample c) {
  FamilyVerdict v;
  v.holds = false;
  v.counterexample = std::move(c);
  return v;
}

// Earliest round of a PO for the i-edge (j, m), searching up to `until`.
std::optional<Round> earliest_po(const EvolvingGraph& g, AgentId i, AgentId j, Round m, Round until) {
  auto pos = punishment_opportunities(g, i, j, m, until);
  if (pos.empty()) return std::nullopt;
  Round best = kNever;
  for (const auto& [l, r] : pos) best = std::min(best, r);
  return best;
}

bool connected_without(const RoundGraph& r, AgentId i) {
  const int n = r.n();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [a, b] : r.edges())
    if (a != i && b != i) parent[static_cast<std::size_t>(find(a))] = find(b);
  int root = -1;
  for (AgentId a = 0; a < n; ++a) {
    if (a == i) continue;
    int ra = find(a);
    if (root == -1) root = ra;
    else if (ra != root) return false;
  }
  return true;
}

std::string describe_edge(AgentId i, AgentId j, Round m) {
  return "i-edge (" + std::to_string(j) + "," + std::to_string(m) + ") of agent " + std::to_string(i);
}

}  // namespace

nlohmann::json to_json(const FamilyVerdict& v, const GraphFamily& f) {
  nlohmann::json out;
  out["holds"] = v.holds;
  out["certificate"] = v.certificate ? nlohmann::json(*v.certificate) : nlohmann::json(nullptr);
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    nlohmann::json cj;
    cj["member"] = c.member < f.members.size() ? f.members[c.member].name : std::to_string(c.member);
    cj["member_index"] = c.member;
    cj["agent"] = c.agent;
    cj["partner"] = c.partner ? nlohmann::json(*c.partner) : nlohmann::json(nullptr);
    cj["round"] = c.round;
    cj["detail"] = c.detail;
    out["counterexample"] = cj;
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

FamilyVerdict check_timely_punishments(const GraphFamily& f, long rho) {
  if (rho < 1) throw InputError("rho must be >= 1");
  // Past the horizon every i-edge repeats one already checked (horizon >= prefix + cycle),
  // and its PO search only looks forward, so the finite scan decides the infinite statement.
  for (std::size_t k = 0; k < f.members.size(); ++k) {
    const auto& g = f.members[k];
    for (Round m = 1; m <= f.horizon; ++m)
      for (AgentId i = 0; i < f.n; ++i)
        for (AgentId j : graph_at(g, m).neighbors(i))
          if (!earliest_po(g, i, j, m, m + rho - 1))
            return failing(make_counterexample(k, i, j, m, "no PO before round " + std::to_string(m + rho) + " for " +
                                                               describe_edge(i, j, m)));
  }
  FamilyVerdict v;
  v.holds = true;
  v.certificate = rho;
  return v;
}

std::optional<long> minimal_timely_bound(const GraphFamily& f, long max_rho) {
  long needed = 1;
  for (const auto& g : f.members)
    for (Round m = 1; m <= f.horizon; ++m)
      for (AgentId i = 0; i < f.n; ++i)
        for (AgentId j : graph_at(g, m).neighbors(i)) {
          auto r = earliest_po(g, i, j, m, m + max_rho - 1);
          if (!r) return std::nullopt;
          needed = std::max(needed, static_cast<long>(*r - m + 1));
        }
  return needed;
}

FamilyVerdict check_connectivity_restriction(const GraphFamily& f) {
  if (f.observation != ObservationModel::NeighborsAndDegrees)
    return failing(make_counterexample(0, 0, std::nullopt, 0, "observation model does not reveal neighbour degrees"));
  for (std::size_t k = 0; k < f.members.size(); ++k) {
    const auto& g = f.members[k];
    for (Round m = 1; m <= g.span(); ++m)
      for (AgentId i = 0; i < f.n; ++i)
        if (!connected_without(graph_at(g, m), i))
          return failing(make_counterexample(k, i, std::nullopt, m,
                                             "round graph minus the edges of agent " + std::to_string(i) +
                                                 " is disconnected"));
  }
  FamilyVerdict v;
  v.holds = true;
  return v;
}

bool indistinguishable_at(const EvolvingGraph& g, const EvolvingGraph& g2, AgentId i, Round m, ObservationModel obs) {
  // reach holds {j : (j, r) ~> (i, m)}; walk r backwards from m. At r = m the cone is i itself,
  // and hops happen strictly between r and m, so round m's own edges never enter the cone.
  if (g.n() != g2.n()) return false;
  std::vector<char> reach_a(static_cast<std::size_t>(g.n()), 0), reach_b(static_cast<std::size_t>(g2.n()), 0);
  reach_a[static_cast<std::size_t>(i)] = reach_b[static_cast<std::size_t>(i)] = 1;
  for (Round r = m; r >= 1; --r) {
    if (r + 1 < m) {
      // extend by round r+1 edges
      auto grow = [](const RoundGraph& next, std::vector<char>& reach) {
        std::vector<char> out = reach;
        for (auto [a, b] : next.edges()) {
          if (reach[static_cast<std::size_t>(b)]) out[static_cast<std::size_t>(a)] = 1;
          if (reach[static_cast<std::size_t>(a)]) out[static_cast<std::size_t>(b)] = 1;
        }
        reach = std::move(out);
      };
      grow(graph_at(g, r + 1), reach_a);
      grow(graph_at(g2, r + 1), reach_b);
    }
    if (reach_a != reach_b) return false;
    for (AgentId j = 0; j < g.n(); ++j)
      if (reach_a[static_cast<std::size_t>(j)] && !(local_view(g, j, r, obs) == local_view(g2, j, r, obs)))
        return false;
  }
  return true;
}

std::optional<IndistinguishableWitness> is_indistinguishable_round(const GraphFamily& f, std::size_t g, AgentId i,
                                                                   long rho, Round m) {
  const auto& base = f.members.at(g);
  const auto k = static_cast<std::size_t>(graph_at(base, m).degree(i));
  if (k == 0) return std::nullopt;
  const auto po_g = po_set(base, i, rho, m);

  std::vector<std::set<Opportunity>> pos(f.members.size());
  std::vector<char> consistent(f.members.size(), 0);
  for (std::size_t a = 0; a < f.members.size(); ++a) {
    pos[a] = po_set(f.members[a], i, rho, m);
    consistent[a] = std::all_of(pos[a].begin(), pos[a].end(), [&](const Opportunity& o) {
      return indistinguishable_at(f.members[a], base, o.first, o.second, f.observation);
    });
  }
  for (std::size_t a = 0; a < f.members.size(); ++a) {
    if (!consistent[a]) continue;
    for (std::size_t b = a; b < f.members.size(); ++b) {
      if (!consistent[b]) continue;
      std::vector<Opportunity> common, joined;
      std::set_intersection(pos[a].begin(), pos[a].end(), pos[b].begin(), pos[b].end(), std::back_inserter(common));
      if (common.size() >= k) continue;
      std::set_union(pos[a].begin(), pos[a].end(), pos[b].begin(), pos[b].end(), std::back_inserter(joined));
      if (!std::equal(joined.begin(), joined.end(), po_g.begin(), po_g.end())) continue;
      return IndistinguishableWitness{a, b, pos[a], pos[b]};
    }
  }
  return std::nullopt;
}

FamilyVerdict check_eventual_distinguishability(const GraphFamily& f, long rho, Round m_star) {
  if (m_star > f.horizon) throw InputError("m_star beyond the family horizon");
  for (std::size_t k = 0; k < f.members.size(); ++k)
    for (Round m = std::max<Round>(m_star + 1, 1); m <= f.horizon; ++m)
      for (AgentId i = 0; i < f.n; ++i)
        if (auto w = is_indistinguishable_round(f, k, i, rho, m))
          return failing(make_counterexample(k, i, std::nullopt, m,
                                             "round is indistinguishable: witness pair (" + f.members[w->first].name +
                                                 ", " + f.members[w->second].name + ")"));
  FamilyVerdict v;
  v.holds = true;
  v.certificate = rho;
  return v;
}

namespace {

// Agent pairs (l, o) with i-edges (l, r1), (o, r2) and (l, r1) ~>_i (o, r2), over all rounds of g.
std::vector<std::vector<char>> cross_influence(const EvolvingGraph& g, AgentId i) {
  const int n = g.n();
  std::vector<std::vector<char>> linked(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  // Sources past prefix+cycle repeat earlier ones. Within n cycles after the prefix the informed
  // set stops growing, after which every later i-edge of an informed agent recurs within one cycle.
  const Round last_source = g.span();
  for (Round r1 = 1; r1 <= last_source; ++r1)
    for (AgentId l : graph_at(g, r1).neighbors(i)) {
      const Round until = std::max(r1, g.prefix_length()) + (n + 2) * g.cycle_length();
      auto known = knowledge_rounds(g, l, r1, until, i);
      for (Round r2 = r1 + 1; r2 <= until; ++r2)
        for (AgentId o : graph_at(g, r2).neighbors(i))
          if (o == l || known[static_cast<std::size_t>(o)] < r2)
            linked[static_cast<std::size_t>(l)][static_cast<std::size_t>(o)] = 1;
    }
  return linked;
}

}  // namespace

std::optional<AmbiguityWitness> is_ambiguous_po(const GraphFamily& f, std::size_t g, AgentId i, AgentId j, Round m,
                                                int max_agents) {
  if (f.n > max_agents)
    throw EnumerationRefused("partition search refused: n=" + std::to_string(f.n) + " exceeds cap " +
                                 std::to_string(max_agents),
                             static_cast<double>(1ULL << std::min(f.n - 1, 62)));
  const auto& base = f.members.at(g);
  if (!graph_at(base, m).has_edge(i, j))
    throw InputError("(" + std::to_string(i) + "," + std::to_string(j) + ") is not an edge at round " +
                     std::to_string(m));

  std::vector<AgentId> others;
  for (AgentId a = 0; a < f.n; ++a)
    if (a != i && a != j) others.push_back(a);

  for (std::size_t k = 0; k < f.members.size(); ++k) {
    const auto& alt = f.members[k];
    if (!indistinguishable_at(alt, base, i, m, f.observation)) continue;
    auto linked = cross_influence(alt, i);
    std::vector<char> before(static_cast<std::size_t>(f.n), 0);
    for (Round r = 1; r < m; ++r)
      for (AgentId l : graph_at(alt, r).neighbors(i)) before[static_cast<std::size_t>(l)] = 1;

    const std::uint64_t count = 1ULL << others.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      // bit set: agent goes to N2 (with j)
      std::vector<char> in_n2(static_cast<std::size_t>(f.n), 0);
      in_n2[static_cast<std::size_t>(j)] = 1;
      for (std::size_t b = 0; b < others.size(); ++b)
        if (mask >> b & 1) in_n2[static_cast<std::size_t>(others[b])] = 1;
      bool ok = true;
      for (AgentId a = 0; a < f.n && ok; ++a) {
        if (a == i) continue;
        if (before[static_cast<std::size_t>(a)] && in_n2[static_cast<std::size_t>(a)]) ok = false;
        for (AgentId b = 0; b < f.n && ok; ++b)
          if (b != i && linked[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] &&
              in_n2[static_cast<std::size_t>(a)] != in_n2[static_cast<std::size_t>(b)])
            ok = false;
      }
      if (!ok) continue;
      AmbiguityWitness w;
      w.member = k;
      for (AgentId a = 0; a < f.n; ++a) {
        if (a == i) continue;
        (in_n2[static_cast<std::size_t>(a)] ? w.n2 : w.n1).push_back(a);
      }
      return w;
    }
  }
  return std::nullopt;
}

namespace {

// Does information held by l at the end of m1 reach any later neighbour of j (after m1) or of i
// (after m2) without the hop l -> i at m2? Relays other than j only.
bool escapes_cut(const EvolvingGraph& g, AgentId i, AgentId j, AgentId l, Round m1, Round m2, Round until) {
  const int n = g.n();
  std::vector<Round> known(static_cast<std::size_t>(n), kNever);
  known[static_cast<std::size_t>(l)] = m1;
  auto reached_before = [&](AgentId o, Round r) { return known[static_cast<std::size_t>(o)] < r; };
  for (Round r = m1 + 1; r <= until; ++r) {
    const RoundGraph& round = graph_at(g, r);
    // targets are checked against what was known before this round
    for (AgentId o : round.neighbors(j))
      if (reached_before(o, r)) return true;
    if (r > m2)
      for (AgentId o : round.neighbors(i))
        if (reached_before(o, r)) return true;
    std::vector<Round> next = known;
    for (auto [a, b] : round.edges()) {
      auto hop = [&](AgentId from, AgentId to) {
        if (known[static_cast<std::size_t>(from)] >= r || from == j) return;
        if (from == l && to == i && r == m2) return;
        if (next[static_cast<std::size_t>(to)] == kNever) next[static_cast<std::size_t>(to)] = r;
      };
      hop(a, b);
      hop(b, a);
    }
    known = std::move(next);
  }
  return false;
}

}  // namespace

std::optional<UnsafeWitness> is_unsafe(const EvolvingGraph& g, long rho, Round horizon) {
  if (horizon < rho) throw InputError("is_unsafe needs horizon >= rho");
  const int n = g.n();
  const Round until = std::max(horizon, g.prefix_length()) + rho + (n + 2) * g.cycle_length();
  for (Round m = 1; m <= horizon; ++m)
    for (AgentId i = 0; i < n; ++i)
      for (AgentId j : graph_at(g, m).neighbors(i))
        for (AgentId l = 0; l < n; ++l) {
          if (l == i || l == j) continue;
          for (Round m1 = m + 1; m1 < m + rho; ++m1) {
            if (!graph_at(g, m1).has_edge(j, l)) continue;
            for (Round m2 = m1 + 1; m2 < m + rho; ++m2) {
              if (!graph_at(g, m2).has_edge(i, l)) continue;
              bool quiet = true;
              for (Round r = m2 + 1; r < m + rho && quiet; ++r) quiet = graph_at(g, r).degree(l) == 0;
              if (!quiet) continue;
              if (escapes_cut(g, i, j, l, m1, m2, until)) continue;
              return UnsafeWitness{i, j, l, m, m1, m2};
            }
          }
        }
  return std::nullopt;
}

}  // namespace dynacct
