#include "dynacct/distribution.hpp"

#include <algorithm>
#include <functional>

#include "dynacct/errors.hpp"

namespace dynacct {

struct Distribution::Interner {
  std::map<std::pair<std::int64_t, Key>, std::int64_t> ids;

  std::int64_t intern(std::int64_t prev, Key&& obs) {
    auto [it, fresh] = ids.try_emplace({prev, std::move(obs)}, static_cast<std::int64_t>(ids.size()) + 1);
    return it->second;
  }
};

namespace {

std::int64_t encode(const IndividualAction& a) { return static_cast<std::int64_t>(a.kind) * 1000 + a.count; }

void append_sized(Distribution::Key& out, const std::function<void(Distribution::Key&)>& fill) {
  const std::size_t at = out.size();
  out.push_back(0);
  fill(out);
  out[at] = static_cast<std::int64_t>(out.size() - at - 1);
}

}  // namespace

Distribution::Key machines_key(const std::vector<MachinePtr>& machines) {
  Distribution::Key key;
  for (const auto& m : machines) append_sized(key, [&](Distribution::Key& out) { m->fingerprint(out); });
  return key;
}

Distribution::Distribution(const SimConfig& cfg, std::optional<AgentId> tracked, std::size_t cap)
    : cfg_(std::make_shared<const SimConfig>(cfg)),
      graph_(std::make_shared<const EvolvingGraph>(cfg.graph())),
      tracked_(tracked),
      cap_(cap),
      interner_(std::make_shared<Interner>()) {
  cfg.validate();
  Branch b;
  b.prob = 1;
  b.machines = build_machines(cfg);
  Key key = machines_key(b.machines);
  key.push_back(0);
  branches_.emplace(std::move(key), std::move(b));
}

Distribution::Distribution(const Distribution& other)
    : cfg_(other.cfg_),
      graph_(other.graph_),
      tracked_(other.tracked_),
      cap_(other.cap_),
      interner_(other.interner_),
      round_(other.round_) {
  for (const auto& [key, b] : other.branches_) {
    Branch c;
    c.prob = b.prob;
    c.obs = b.obs;
    for (const auto& m : b.machines) c.machines.push_back(m->clone());
    branches_.emplace(key, std::move(c));
  }
}

Distribution& Distribution::operator=(const Distribution& other) {
  if (this != &other) {
    Distribution copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Rational Distribution::total_mass() const {
  Rational t = 0;
  for (const auto& [k, b] : branches_) t += b.prob;
  return t;
}

Distribution::StepStats Distribution::step(const StepOptions& options) {
  const Round m = ++round_;
  const int n = cfg_->n();
  const RoundGraph& rg = graph_at(*graph_, m);
  StepStats st;
  st.round = m;
  st.utility.assign(static_cast<std::size_t>(n), Rational(0));
  st.punishments.assign(static_cast<std::size_t>(n), Rational(0));
  std::map<Key, Rational> profiles;
  std::map<Key, Branch> next;
  double leaves = 0;

  std::map<Key, Branch> current = std::move(branches_);
  branches_.clear();
  for (auto& [old_key, br] : current) {
    std::vector<Decision> decisions = decide_all(*graph_, m, cfg_->family.observation, br.machines);
    if (options.forced) {
      Action f = *options.forced;
      f.round = m;
      decisions[static_cast<std::size_t>(f.agent)] = Decision::certain(f);
    }
    std::vector<std::pair<AgentId, std::size_t>> points;
    double product = 1;
    for (AgentId a = 0; a < n; ++a) {
      const auto& draws = decisions[static_cast<std::size_t>(a)].draws;
      for (std::size_t d = 0; d < draws.size(); ++d)
        if (!draws[d].deterministic()) {
          points.emplace_back(a, d);
          product *= static_cast<double>(draws[d].support.size());
        }
    }
    leaves += product;
    if (leaves > static_cast<double>(cap_))
      throw EnumerationRefused("round " + std::to_string(m) + " needs more than " + std::to_string(cap_) +
                                   " enumerated branches",
                               leaves);

    ActionProfile base;
    base.round = m;
    for (AgentId a = 0; a < n; ++a) base.actions.push_back(decisions[static_cast<std::size_t>(a)].mode_action(a, m));

    std::vector<std::size_t> idx(points.size(), 0);
    const bool single = points.empty();
    while (true) {
      ActionProfile profile = base;
      Rational p = br.prob;
      for (std::size_t k = 0; k < points.size(); ++k) {
        const auto [a, d] = points[k];
        const Draw& draw = decisions[static_cast<std::size_t>(a)].draws[d];
        profile.actions[static_cast<std::size_t>(a)].per_neighbor[draw.neighbor] = draw.support[idx[k]].first;
        p *= draw.support[idx[k]].second;
      }
      const bool keep = !options.require || profile == *options.require;
      if (keep && p != 0) {
        for (AgentId a = 0; a < n; ++a)
          for (const auto& [j, x] : profile.actions[static_cast<std::size_t>(a)].per_neighbor)
            check_legal(x, cfg_->params.mode, n);
        std::vector<MachinePtr> machines;
        if (single) {
          machines = std::move(br.machines);
        } else {
          for (const auto& mach : br.machines) machines.push_back(mach->clone());
        }
        // payloads are taken before any machine records the round
        std::int64_t obs = br.obs;
        if (tracked_) {
          const AgentId i = *tracked_;
          Key o;
          for (const auto& [j, x] : profile.actions[static_cast<std::size_t>(i)].per_neighbor) {
            o.push_back(j);
            o.push_back(encode(x));
          }
          for (AgentId j : rg.neighbors(i)) {
            const IndividualAction& x = profile.actions[static_cast<std::size_t>(j)].toward(i);
            o.push_back(encode(x));
            if (x.sends()) {
              Payload pl = machines[static_cast<std::size_t>(j)]->payload_for(i);
              if (pl) append_sized(o, [&](Key& out) { pl->fingerprint(out); });
              else o.push_back(-1);
            }
          }
          obs = interner_->intern(br.obs, std::move(o));
        }
        play_round(*graph_, m, machines, profile);

        st.mass += p;
        for (AgentId a = 0; a < n; ++a) {
          st.utility[static_cast<std::size_t>(a)] += p * round_utility(a, profile, rg, cfg_->params);
          for (AgentId j : rg.neighbors(a))
            if (profile.actions[static_cast<std::size_t>(j)].toward(a).punishes())
              st.punishments[static_cast<std::size_t>(a)] += p;
        }
        if (options.profile_key) {
          Key pk;
          for (const auto& act : profile.actions)
            for (const auto& [j, x] : act.per_neighbor) pk.push_back(encode(x));
          profiles[pk] += p;
        }

        Key key = machines_key(machines);
        key.push_back(obs);
        auto it = next.find(key);
        if (it == next.end()) {
          Branch b;
          b.prob = p;
          b.obs = obs;
          b.machines = std::move(machines);
          next.emplace(std::move(key), std::move(b));
        } else {
          it->second.prob += p;
        }
      }
      std::size_t k = 0;
      while (k < points.size()) {
        const auto [a, d] = points[k];
        if (++idx[k] < decisions[static_cast<std::size_t>(a)].draws[d].support.size()) break;
        idx[k] = 0;
        ++k;
      }
      if (k == points.size()) break;
    }
  }
  branches_ = std::move(next);
  if (options.profile_key) st.profiles.assign(profiles.begin(), profiles.end());
  return st;
}

std::vector<std::pair<Distribution::Key, Rational>> Distribution::state_key() const {
  std::map<Key, Rational> merged;
  for (const auto& [key, b] : branches_) merged[Key(key.begin(), key.end() - 1)] += b.prob;
  return {merged.begin(), merged.end()};
}

bool Distribution::same_state(const Distribution& other) const { return state_key() == other.state_key(); }

std::vector<std::int64_t> Distribution::observation_classes() const {
  std::vector<std::int64_t> out;
  for (const auto& [k, b] : branches_) out.push_back(b.obs);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Distribution Distribution::restrict_to(std::int64_t obs) const {
  Distribution out(*this);
  for (auto it = out.branches_.begin(); it != out.branches_.end();)
    it = it->second.obs == obs ? std::next(it) : out.branches_.erase(it);
  out.normalize();
  return out;
}

void Distribution::normalize() {
  const Rational t = total_mass();
  if (t == 0) throw InputError("conditioning on an event of probability zero");
  for (auto& [k, b] : branches_) b.prob /= t;
}

namespace {

// Steps once, conditioned on the prefix when it covers this round; returns conditional stats.
Distribution::StepStats conditioned_step(Distribution& d, const std::vector<ActionProfile>& prefix) {
  Distribution::StepOptions opts;
  const Round m = d.round() + 1;
  if (m <= static_cast<Round>(prefix.size())) opts.require = &prefix[static_cast<std::size_t>(m - 1)];
  Distribution::StepStats st = d.step(opts);
  if (opts.require) {
    if (st.mass == 0) throw InputError("history prefix has probability zero at round " + std::to_string(m));
    for (auto& u : st.utility) u /= st.mass;
    for (auto& p : st.punishments) p /= st.mass;
    d.normalize();
  }
  return st;
}

}  // namespace

Rational expected_utility(const SimConfig& cfg, AgentId i, const std::vector<ActionProfile>& prefix, std::size_t cap) {
  Distribution d(cfg, std::nullopt, cap);
  Rational total = 0, weight = 1;
  for (Round m = 1; m <= cfg.horizon; ++m) {
    const auto st = conditioned_step(d, prefix);
    total += weight * st.utility[static_cast<std::size_t>(i)];
    weight *= cfg.params.delta;
  }
  return total;
}

Rational expected_punishments(const SimConfig& cfg, AgentId i, Round from, long rho,
                              const std::vector<ActionProfile>& prefix, std::size_t cap) {
  Distribution d(cfg, std::nullopt, cap);
  Rational total = 0;
  for (Round m = 1; m < from + rho; ++m) {
    const auto st = conditioned_step(d, prefix);
    if (m > from) total += st.punishments[static_cast<std::size_t>(i)];
  }
  return total;
}

std::vector<std::vector<Rational>> expected_round_utilities(const SimConfig& cfg, std::size_t cap) {
  Distribution d(cfg, std::nullopt, cap);
  std::vector<std::vector<Rational>> out;
  for (Round m = 1; m <= cfg.horizon; ++m) out.push_back(d.step().utility);
  return out;
}

}  // namespace dynacct
