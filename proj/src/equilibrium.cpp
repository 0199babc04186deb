#include "dynacct/equilibrium.hpp"

#include <set>
#include <tuple>

#include "dynacct/errors.hpp"

namespace dynacct {

using nlohmann::json;

Round graph_position(const EvolvingGraph& g, Round m) {
  const Round p = g.prefix_length();
  if (m <= p) return m;
  return p + 1 + (m - p - 1) % g.cycle_length();
}

namespace {

using StateKey = std::vector<std::pair<Distribution::Key, Rational>>;

// Honest continuation from one information set, extended on demand.
struct Reference {
  Distribution dist;
  AgentId agent;
  std::vector<Rational> utility;  // [k]: round m+k
  std::vector<StateKey> keys;     // state after round m+k

  const Rational& u(std::size_t k) {
    ensure(k);
    return utility[k];
  }
  const StateKey& key(std::size_t k) {
    ensure(k);
    return keys[k];
  }
  void ensure(std::size_t k) {
    while (utility.size() <= k) {
      const auto st = dist.step();
      utility.push_back(st.utility[static_cast<std::size_t>(agent)]);
      keys.push_back(dist.state_key());
    }
  }
};

class Verifier {
 public:
  Verifier(const SimConfig& cfg, AgentId i, const VerifyOptions& opts) : cfg_(cfg), i_(i), opts_(opts) {
    report_.agent = i;
    report_.horizon = cfg.horizon;
    report_.robust_depth = opts.robust_depth;
  }

  EquilibriumReport run() {
    for (const auto& [label, spec] : opts_.candidates) candidate(label, spec);
    scan();
    return report_;
  }

 private:
  Rational tolerance(Round m) const { return tail_bound(cfg_.params, cfg_.n(), cfg_.horizon - m); }

  // A failing deviation outranks every passing one; within a class the larger gain wins and
  // earlier finds (candidates first) keep ties.
  void note(const Rational& gain, const Rational& tol, DeviationWitness w) {
    const bool fails = gain > tol;
    const bool better = !report_.witness || (fails && report_.pass) || (fails == !report_.pass && gain > report_.max_gain);
    if (fails) report_.pass = false;
    if (better) {
      report_.max_gain = gain;
      report_.tolerance = tol;
      report_.witness = std::move(w);
    }
  }

  void candidate(const std::string& label, const StrategySpec& spec) {
    SimConfig dev_cfg = cfg_;
    dev_cfg.strategies.at(static_cast<std::size_t>(i_)) = spec;
    dev_cfg.machine_overrides.erase(i_);
    Distribution honest(cfg_, std::nullopt, opts_.cap), dev(dev_cfg, std::nullopt, opts_.cap);
    Distribution::StepOptions opts;
    opts.profile_key = true;
    Rational diff = 0, weight = 1;
    std::optional<Round> first;
    for (Round r = 1; r <= cfg_.horizon; ++r) {
      const auto sh = honest.step(opts);
      const auto sd = dev.step(opts);
      if (!first && sh.profiles != sd.profiles) first = r;
      diff += weight * (sd.utility[static_cast<std::size_t>(i_)] - sh.utility[static_cast<std::size_t>(i_)]);
      weight *= cfg_.params.delta;
      if (first && dev.same_state(honest)) break;
    }
    DeviationWitness w;
    w.agent = i_;
    w.candidate = label;
    w.round = first.value_or(0);
    if (first) w.neighbors = graph_at(cfg_.graph(), *first).neighbors(i_);
    const Rational gain = first ? Rational(diff / pow(cfg_.params.delta, *first - 1)) : Rational(0);
    report_.candidates.push_back({label, first.value_or(0), gain, tolerance(first.value_or(1))});
    note(gain, tolerance(first.value_or(1)), std::move(w));
  }

  void scan() {
    const EvolvingGraph& g = cfg_.graph();
    Distribution honest(cfg_, i_, opts_.cap);
    std::set<std::pair<Round, StateKey>> seen;
    const Round limit = opts_.last_deviation_round > 0 ? std::min(opts_.last_deviation_round, cfg_.horizon) : cfg_.horizon;
    for (Round m = 1; m <= limit; ++m) {
      if (m > g.prefix_length() && !seen.emplace(graph_position(g, m), honest.state_key()).second) break;
      for (std::int64_t c : honest.observation_classes()) check(honest.restrict_to(c), m, opts_.robust_depth);
      report_.last_round_scanned = m;
      honest.step();
    }
  }

  // Every one-shot deviation of agent i at the information set `at` (state entering round m).
  void check(const Distribution& at, Round m, int depth) {
    if (m > cfg_.horizon) return;
    const EvolvingGraph& g = cfg_.graph();
    if (!memo_.emplace(depth, graph_position(g, m), at.state_key()).second) return;
    ++report_.info_sets;
    const Rational tol = tolerance(m);
    Reference ref{at, i_, {}, {}};
    const std::vector<AgentId>& nbrs = graph_at(g, m).neighbors(i_);
    const std::vector<IndividualAction> legal = legal_actions(cfg_.params.mode, cfg_.n());
    std::map<StateKey, Rational> continuation;

    std::vector<std::size_t> idx(nbrs.size(), 0);
    while (true) {
      Action a;
      a.agent = i_;
      a.round = m;
      for (std::size_t k = 0; k < nbrs.size(); ++k) a.per_neighbor[nbrs[k]] = legal[idx[k]];

      Distribution alt = at;
      Distribution::StepOptions opts;
      opts.forced = a;
      const auto st = alt.step(opts);
      Rational gain = st.utility[static_cast<std::size_t>(i_)] - ref.u(0);
      StateKey sk = alt.state_key();
      if (sk != ref.key(0)) {
        auto it = continuation.find(sk);
        if (it == continuation.end()) it = continuation.emplace(sk, continue_from(std::move(alt), ref, m, depth)).first;
        gain += it->second;
      }
      DeviationWitness w;
      w.agent = i_;
      w.round = m;
      w.depth = opts_.robust_depth - depth + 1;
      w.neighbors = nbrs;
      w.override_action = a.per_neighbor;
      w.info_set_branches = at.size();
      note(gain, tol, std::move(w));

      std::size_t k = 0;
      while (k < idx.size()) {
        if (++idx[k] < legal.size()) break;
        idx[k] = 0;
        ++k;
      }
      if (k == idx.size()) break;
    }
  }

  // Discounted utility difference (weights relative to round m) from round m+1 on.
  Rational continue_from(Distribution alt, Reference& ref, Round m, int depth) {
    Rational diff = 0, weight = 1;
    for (Round r = m + 1; r <= cfg_.horizon; ++r) {
      if (depth > 1)
        for (std::int64_t c : alt.observation_classes()) check(alt.restrict_to(c), r, depth - 1);
      weight *= cfg_.params.delta;
      const auto st = alt.step();
      const std::size_t k = static_cast<std::size_t>(r - m);
      diff += weight * (st.utility[static_cast<std::size_t>(i_)] - ref.u(k));
      if (alt.state_key() == ref.key(k)) break;
    }
    return diff;
  }

  const SimConfig& cfg_;
  AgentId i_;
  const VerifyOptions& opts_;
  EquilibriumReport report_;
  std::set<std::tuple<int, Round, StateKey>> memo_;
};

}  // namespace

EquilibriumReport verify_one_shot(const SimConfig& cfg, AgentId i, const VerifyOptions& options) {
  cfg.validate();
  if (i < 0 || i >= cfg.n()) throw InputError("agent " + std::to_string(i) + " out of range");
  if (options.robust_depth < 1) throw InputError("robust depth must be >= 1");
  return Verifier(cfg, i, options).run();
}

bool on_path_cooperation(const SimConfig& cfg, Round rounds, std::string* detail) {
  Distribution d(cfg);
  Distribution::StepOptions opts;
  opts.profile_key = true;
  const std::int64_t coop = static_cast<std::int64_t>(ActionKind::Cooperate) * 1000;
  const std::int64_t pp0 = static_cast<std::int64_t>(ActionKind::ProportionalPunish) * 1000;
  for (Round m = 1; m <= rounds; ++m) {
    const auto st = d.step(opts);
    for (const auto& [profile, p] : st.profiles)
      for (std::int64_t code : profile)
        if (code != coop && code != pp0) {
          if (detail) *detail = "non-cooperative on-path action at round " + std::to_string(m);
          return false;
        }
  }
  return true;
}

json to_json(const DeviationWitness& w) {
  json j;
  j["agent"] = w.agent;
  j["round"] = w.round;
  j["depth"] = w.depth;
  j["neighbors"] = w.neighbors;
  if (w.candidate) {
    j["candidate"] = *w.candidate;
  } else {
    json o = json::object();
    for (const auto& [nb, a] : w.override_action) o[std::to_string(nb)] = a.code();
    j["override"] = o;
    j["info_set_branches"] = w.info_set_branches;
  }
  return j;
}

json to_json(const EquilibriumReport& r) {
  json j;
  j["agent"] = r.agent;
  j["max_gain"] = to_string(r.max_gain);
  j["max_gain_decimal"] = to_decimal(r.max_gain);
  j["tolerance"] = to_decimal(r.tolerance, 20);
  j["verdict"] = r.pass ? "pass" : "fail";
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  j["info_sets"] = r.info_sets;
  j["last_round_scanned"] = r.last_round_scanned;
  j["horizon"] = r.horizon;
  j["robust_depth"] = r.robust_depth;
  json cs = json::array();
  for (const auto& c : r.candidates)
    cs.push_back({{"label", c.label},
                  {"first_divergence", c.first_divergence},
                  {"gain", to_string(c.gain)},
                  {"gain_decimal", to_decimal(c.gain)},
                  {"verdict", c.gain > c.tolerance ? "fail" : "pass"}});
  j["candidates"] = cs;
  return j;
}

}  // namespace dynacct
