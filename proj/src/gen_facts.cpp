#include "dynacct/gen_facts.hpp"

#include <algorithm>

#include "dynacct/deviations.hpp"
#include "dynacct/distribution.hpp"
#include "dynacct/errors.hpp"
#include "dynacct/temporal.hpp"

namespace dynacct {

using nlohmann::json;

void FactResult::fail(AgentId a, Round r, std::string why) {
  if (!pass) return;
  pass = false;
  agent = a;
  round = r;
  detail = std::move(why);
}

bool GenFactReport::all_pass() const {
  return std::all_of(facts.begin(), facts.end(), [](const FactResult& f) { return f.pass; });
}

const FactResult& GenFactReport::fact(const std::string& name) const {
  for (const auto& f : facts)
    if (f.name == name) return f;
  throw std::out_of_range("no fact " + name);
}

const GenMachine* gen_machine(const StrategyMachine& m) {
  if (auto g = dynamic_cast<const GenMachine*>(&m)) return g;
  if (auto w = dynamic_cast<const OneShotMachine*>(&m)) return gen_machine(w->base());
  if (auto w = dynamic_cast<const AlwaysDefectUntilMachine*>(&m)) return gen_machine(w->base());
  if (auto w = dynamic_cast<const SingleEvasiveMachine*>(&m)) return gen_machine(w->shadow());
  return nullptr;
}

namespace {

const GenMachine& held(const Run& run, AgentId l, Round end_of_round) {
  const auto& snap = run.records.at(static_cast<std::size_t>(end_of_round - 1)).machines_after;
  const GenMachine* g = gen_machine(*snap.at(static_cast<std::size_t>(l)));
  if (!g) throw InputError("agent " + std::to_string(l) + " does not run sigma_gen");
  return *g;
}

std::string status_name(std::optional<ReportStatus> s) {
  if (!s) return "none";
  return *s == ReportStatus::Defected ? "defected" : "clean";
}

bool defects_someone(const Action& a) {
  return std::any_of(a.per_neighbor.begin(), a.per_neighbor.end(),
                     [](const auto& kv) { return kv.second.kind == ActionKind::Defect; });
}

}  // namespace

GenFactReport assert_gen_facts(const SimConfig& conforming, const SimConfig& deviating, AgentId i, Round m) {
  const int n = conforming.n();
  const Round end = m + static_cast<Round>(n) * n + n;
  SimConfig conf_cfg = conforming, dev_cfg = deviating;
  conf_cfg.horizon = dev_cfg.horizon = end;
  dev_cfg.seed = conf_cfg.seed;
  if (!(conf_cfg.graph() == dev_cfg.graph())) throw InputError("paired runs use different graphs");
  const EvolvingGraph& g = conf_cfg.graph();

  const Run conf = simulate_recorded(conf_cfg, true);
  const Run dev = simulate_recorded(dev_cfg, true);
  for (Round r = 1; r < m; ++r)
    if (!(conf.trace.history.profiles[static_cast<std::size_t>(r - 1)] == dev.trace.history.profiles[static_cast<std::size_t>(r - 1)]))
      throw InputError("paired traces diverge at round " + std::to_string(r) + ", before the deviation round");

  GenFactReport rep;
  rep.deviator = i;
  rep.round = m;
  rep.degree = graph_at(g, m).degree(i);
  const Action& dev_action = dev.trace.history.profiles[static_cast<std::size_t>(m - 1)].actions[static_cast<std::size_t>(i)];
  rep.defected = defects_someone(dev_action);

  // F1: reports about i at round m track the causal-influence relation without i.
  FactResult f1{"F1"};
  for (const Run* run : {&dev, &conf}) {
    const Action& ai = run->trace.history.profiles[static_cast<std::size_t>(m - 1)].actions[static_cast<std::size_t>(i)];
    for (Round mp = m; mp <= m + n - 2; ++mp)
      for (AgentId l = 0; l < n; ++l) {
        if (l == i) continue;
        for (AgentId j = 0; j < n; ++j) {
          if (j == i) continue;
          std::optional<ReportStatus> expect;
          if (graph_at(g, m).has_edge(i, j) && causally_influences_excluding(g, i, j, m, l, mp + 1))
            expect = ai.toward(j).kind == ActionKind::Defect ? ReportStatus::Defected : ReportStatus::Clean;
          const auto got = held(*run, l, mp).report(j, i, m);
          if (got != expect)
            f1.fail(l, mp, "report of " + std::to_string(j) + " on " + std::to_string(i) + " is " + status_name(got) +
                               ", expected " + status_name(expect));
        }
      }
  }
  rep.facts.push_back(f1);

  // F2: pend at m+n is y + max(x - deg, 0) for every agent.
  FactResult f2{"F2"};
  for (const Run* run : {&dev, &conf}) {
    const Action& ai = run->trace.history.profiles[static_cast<std::size_t>(m - 1)].actions[static_cast<std::size_t>(i)];
    int x = 0;
    for (AgentId o = 0; o < n; ++o)
      if (o != i) x = std::max(x, held(*run, o, m).pending(i, m));
    const int y = defects_someone(ai) ? rep.degree : 0;
    const int expect = y + std::max(x - rep.degree, 0);
    for (AgentId l = 0; l < n; ++l) {
      if (l == i) continue;
      const int got = held(*run, l, m + n - 1).pending(i, m + n);
      if (got != expect)
        f2.fail(l, m + n - 1, "pend = " + std::to_string(got) + ", expected " + std::to_string(expect));
    }
  }
  rep.facts.push_back(f2);

  // F3: entries about i for other rounds agree across the pair; F4: deviating pend dominates.
  FactResult f3{"F3"}, f4{"F4"};
  for (Round mp = m; mp <= end; ++mp)
    for (AgentId l = 0; l < n; ++l) {
      if (l == i) continue;
      const GenMachine& a = held(dev, l, mp);
      const GenMachine& b = held(conf, l, mp);
      for (Round r = mp - n + 2; r <= mp + 1; ++r) {
        const int pa = a.pending(i, r), pb = b.pending(i, r);
        if (((r - m) % n + n) % n != 0 && pa != pb)
          f3.fail(l, mp, "pend for round " + std::to_string(r) + " differs: " + std::to_string(pa) + " vs " + std::to_string(pb));
        if (mp > m && pa < pb)
          f4.fail(l, mp, "pend for round " + std::to_string(r) + " lower after the deviation: " + std::to_string(pa) +
                             " < " + std::to_string(pb));
      }
      for (const GenMachine* x : {&a, &b}) {
        const GenMachine* y = x == &a ? &b : &a;
        for (const auto& [key, status] : x->tables().acc) {
          const auto [r, subject, reporter] = key;
          if (subject != i || r == m) continue;
          if (y->report(reporter, subject, r) != status)
            f3.fail(l, mp, "report of " + std::to_string(reporter) + " on " + std::to_string(i) + " for round " +
                               std::to_string(r) + " differs");
        }
      }
    }
  rep.facts.push_back(f3);
  rep.facts.push_back(f4);

  // F5 and F6 on exact expectations.
  FactResult f5{"F5"}, f6{"F6"};
  Distribution dc(conf_cfg), dd(dev_cfg);
  const Round window_end = m + static_cast<Round>(n) * n;
  Rational extra_outside = 0;
  for (Round r = 1; r <= end; ++r) {
    const auto sc = dc.step();
    const auto sd = dd.step();
    if (r <= m) continue;
    const Rational delta = sc.utility[static_cast<std::size_t>(i)] - sd.utility[static_cast<std::size_t>(i)];
    if (delta < 0) f5.fail(i, r, "expected round utility higher after deviating by " + to_string(Rational(-delta)));
    const Rational extra = sd.punishments[static_cast<std::size_t>(i)] - sc.punishments[static_cast<std::size_t>(i)];
    rep.extra_punishments += extra;
    if (r <= window_end) rep.utility_loss += delta;
    else if (extra != 0) {
      extra_outside += extra;
      f6.fail(i, r, "extra punishment outside (m, m+n^2]");
    }
  }
  if (rep.defected) {
    if (rep.extra_punishments != rep.degree)
      f6.fail(i, m, "extra expected punishments " + to_string(rep.extra_punishments) + " != degree " +
                        std::to_string(rep.degree));
    if (rep.utility_loss < conforming.params.beta * rep.degree)
      f6.fail(i, m, "utility loss " + to_string(rep.utility_loss) + " below beta * degree");
  }
  rep.facts.push_back(f5);
  rep.facts.push_back(f6);

  FactResult bounded = check_gen_boundedness(dev, n);
  FactResult bounded_conf = check_gen_boundedness(conf, n);
  if (bounded.pass && !bounded_conf.pass) bounded = bounded_conf;
  rep.facts.push_back(bounded);
  return rep;
}

FactResult check_gen_boundedness(const Run& run, int n) {
  FactResult f{"boundedness"};
  const std::size_t bound = GenMachine::state_bound(n);
  for (const auto& rec : run.records)
    for (AgentId l = 0; l < static_cast<AgentId>(rec.machines_after.size()); ++l) {
      const GenMachine* g = gen_machine(*rec.machines_after[static_cast<std::size_t>(l)]);
      if (!g) continue;
      for (int v : g->tables().pend)
        if (v < 0 || v > n - 1) f.fail(l, rec.round, "pend value " + std::to_string(v) + " outside [0, n-1]");
      if (g->state_size() > bound)
        f.fail(l, rec.round, "state size " + std::to_string(g->state_size()) + " exceeds " + std::to_string(bound));
    }
  return f;
}

FactResult check_gen_recovery(const Run& run, int n, Round last_deviation) {
  FactResult f{"recovery"};
  const Round by = last_deviation + static_cast<Round>(n) * n;
  for (const auto& rec : run.records) {
    if (rec.round < by) continue;
    for (AgentId l = 0; l < static_cast<AgentId>(rec.machines_after.size()); ++l) {
      const GenMachine* g = gen_machine(*rec.machines_after[static_cast<std::size_t>(l)]);
      if (!g) continue;
      const auto& pend = g->tables().pend;
      if (std::any_of(pend.begin(), pend.end(), [](int v) { return v != 0; }))
        f.fail(l, rec.round, "pend table not all zero " + std::to_string(rec.round - last_deviation) +
                                 " rounds after the last deviation");
    }
  }
  return f;
}

json to_json(const FactResult& f) {
  json j;
  j["fact"] = f.name;
  j["pass"] = f.pass;
  if (!f.pass) {
    j["agent"] = f.agent ? json(*f.agent) : json(nullptr);
    j["round"] = f.round ? json(*f.round) : json(nullptr);
    j["detail"] = f.detail;
  }
  return j;
}

json to_json(const GenFactReport& r) {
  json j;
  j["deviator"] = r.deviator;
  j["round"] = r.round;
  j["degree"] = r.degree;
  j["defected"] = r.defected;
  j["extra_punishments"] = to_string(r.extra_punishments);
  j["utility_loss"] = to_string(r.utility_loss);
  j["facts"] = json::array();
  for (const auto& f : r.facts) j["facts"].push_back(to_json(f));
  j["pass"] = r.all_pass();
  return j;
}

}  // namespace dynacct
