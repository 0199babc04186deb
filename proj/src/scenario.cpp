#include "dynacct/scenario.hpp"

#include <algorithm>

#include "dynacct/errors.hpp"
#include "dynacct/family_io.hpp"

namespace dynacct {

using nlohmann::json;

SimConfig Scenario::config() const {
  SimConfig c;
  c.family = family;
  c.member = member;
  c.strategies = strategies;
  c.rho = rho;
  c.horizon = horizon;
  c.seed = seed;
  c.params = params;
  return c;
}

VerifyOptions Scenario::verify_options(AgentId i) const {
  VerifyOptions o;
  o.robust_depth = robust_depth;
  for (const auto& c : candidates)
    if (c.agent == i) o.candidates.emplace_back(c.label, c.strategy);
  return o;
}

void Scenario::validate() const {
  config().validate();
  for (const auto& c : candidates)
    if (c.agent < 0 || c.agent >= family.n) throw InputError("candidate agent out of range");
  for (AgentId a : verify_agents)
    if (a < 0 || a >= family.n) throw InputError("verify agent out of range");
  if (robust_depth < 1) throw InputError("robust_depth must be >= 1");
  static const std::vector<std::string> known = {"timely", "connectivity", "eventual_dist", "ambiguous_po", "unsafe"};
  for (const auto& c : checks)
    if (std::find(known.begin(), known.end(), c.name) == known.end()) throw InputError("unknown check '" + c.name + "'");
}

Round verification_horizon(const UtilityParams& p, int n, Round deviation_rounds, const Rational& eps) {
  return deviation_rounds + horizon_for_tail(p, n, eps);
}

namespace {

json params_to_json(const UtilityParams& p) {
  return json{{"mode", to_string(p.mode)},
              {"beta", to_string(p.beta)},
              {"alpha", to_string(p.alpha)},
              {"pi", to_string(p.pi)},
              {"delta", to_string(p.delta)}};
}

Rational rational_field(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return parse_rational(v.dump());
  throw InputError(where + "." + key + ": expected a number or a \"p/q\" string");
}

json check_to_json(const CheckSpec& c) {
  json j{{"check", c.name}};
  if (c.rho) j["rho"] = *c.rho;
  if (c.m_star) j["m_star"] = *c.m_star;
  if (c.member) j["member"] = *c.member;
  if (c.agent) j["agent"] = *c.agent;
  if (c.partner) j["partner"] = *c.partner;
  if (c.round) j["round"] = *c.round;
  return j;
}

CheckSpec check_from_json(const json& j) {
  CheckSpec c;
  if (j.is_string()) {
    c.name = j.get<std::string>();
    return c;
  }
  c.name = j.at("check").get<std::string>();
  if (j.contains("rho")) c.rho = j["rho"].get<long>();
  if (j.contains("m_star")) c.m_star = j["m_star"].get<Round>();
  if (j.contains("member")) c.member = j["member"].get<std::string>();
  if (j.contains("agent")) c.agent = j["agent"].get<AgentId>();
  if (j.contains("partner")) c.partner = j["partner"].get<AgentId>();
  if (j.contains("round")) c.round = j["round"].get<Round>();
  return c;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  try {
    Scenario s;
    s.name = j.value("name", std::string("scenario"));
    s.description = j.value("description", std::string());
    if (!j.contains("family")) throw InputError("scenario: missing 'family'");
    s.family = j["family"].is_string() ? load_family(j["family"].get<std::string>()) : family_from_json(j["family"]);
    s.member = j.value("member", std::string());
    s.rho = j.value("rho", 1L);
    const json pj = j.value("params", json::object());
    const Mode mode = parse_mode(pj.value("mode", std::string("general")));
    s.params = default_params(mode, s.family.n, s.rho);
    for (const char* key : {"beta", "alpha", "pi", "delta"})
      if (pj.contains(key)) {
        Rational v = rational_field(pj, key, "params");
        if (std::string(key) == "beta") s.params.beta = v;
        else if (std::string(key) == "alpha") s.params.alpha = v;
        else if (std::string(key) == "pi") s.params.pi = v;
        else s.params.delta = v;
      }
    const std::string protocol = j.value("protocol", std::string(mode == Mode::Valuable ? "sigma_val" : "sigma_gen"));
    s.strategies.assign(static_cast<std::size_t>(s.family.n), StrategySpec::honest(protocol));
    if (j.contains("strategies"))
      for (std::size_t k = 0; k < j["strategies"].size(); ++k) {
        const json& e = j["strategies"][k];
        const std::string where = "strategies[" + std::to_string(k) + "]";
        const AgentId a = e.at("agent").get<AgentId>();
        if (a < 0 || a >= s.family.n) throw InputError(where + ".agent: out of range");
        s.strategies[static_cast<std::size_t>(a)] = strategy_from_json(e.at("strategy"), where + ".strategy");
      }
    if (j.contains("candidates"))
      for (std::size_t k = 0; k < j["candidates"].size(); ++k) {
        const json& e = j["candidates"][k];
        CandidateSpec c;
        c.agent = e.at("agent").get<AgentId>();
        c.label = e.value("label", "candidate" + std::to_string(k));
        c.strategy = strategy_from_json(e.at("strategy"), "candidates[" + std::to_string(k) + "].strategy");
        s.candidates.push_back(std::move(c));
      }
    if (j.contains("checks"))
      for (const json& c : j["checks"]) s.checks.push_back(check_from_json(c));
    s.seed = j.value("seed", std::uint64_t{0});
    s.robust_depth = j.value("robust_depth", 2);
    if (j.contains("verify_agents")) s.verify_agents = j["verify_agents"].get<std::vector<AgentId>>();
    if (j.contains("horizon")) {
      s.horizon = j["horizon"].get<Round>();
    } else {
      const EvolvingGraph& g = s.config().graph();
      s.horizon = verification_horizon(s.params, s.family.n, g.span() + 2 * g.cycle_length() * s.family.n,
                                       Rational(1, 1000));
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["family"] = family_to_json(s.family);
  j["member"] = s.member;
  j["rho"] = s.rho;
  j["params"] = params_to_json(s.params);
  j["strategies"] = json::array();
  for (AgentId a = 0; a < s.family.n; ++a)
    j["strategies"].push_back({{"agent", a}, {"strategy", strategy_to_json(s.strategies[static_cast<std::size_t>(a)])}});
  j["candidates"] = json::array();
  for (const auto& c : s.candidates)
    j["candidates"].push_back({{"agent", c.agent}, {"label", c.label}, {"strategy", strategy_to_json(c.strategy)}});
  j["checks"] = json::array();
  for (const auto& c : s.checks) j["checks"].push_back(check_to_json(c));
  j["horizon"] = s.horizon;
  j["seed"] = s.seed;
  j["robust_depth"] = s.robust_depth;
  j["verify_agents"] = s.verify_agents;
  return j;
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_json_file(path)); }

namespace {

std::size_t member_of(const GraphFamily& f, const CheckSpec& c) {
  return c.member ? f.member_index(*c.member) : 0;
}

template <typename T>
const T& need(const std::optional<T>& v, const std::string& what, const std::string& check) {
  if (!v) throw InputError("check " + check + " needs " + what);
  return *v;
}

}  // namespace

CheckOutcome run_check(const GraphFamily& f, const CheckSpec& c) {
  f.validate();
  CheckOutcome out;
  if (c.name == "timely") {
    FamilyVerdict v;
    if (c.rho) {
      v = check_timely_punishments(f, *c.rho);
    } else {
      const auto rho = minimal_timely_bound(f, f.horizon);
      v = rho ? check_timely_punishments(f, *rho) : check_timely_punishments(f, f.horizon);
    }
    out.holds = v.holds;
    out.report = to_json(v, f);
  } else if (c.name == "connectivity") {
    const FamilyVerdict v = check_connectivity_restriction(f);
    out.holds = v.holds;
    out.report = to_json(v, f);
  } else if (c.name == "eventual_dist") {
    const FamilyVerdict v = check_eventual_distinguishability(f, need(c.rho, "--rho", c.name), c.m_star.value_or(0));
    out.holds = v.holds;
    out.report = to_json(v, f);
  } else if (c.name == "ambiguous_po") {
    const std::size_t g = member_of(f, c);
    const auto w = is_ambiguous_po(f, g, need(c.agent, "--agent", c.name), need(c.partner, "--partner", c.name),
                                   need(c.round, "--round", c.name));
    out.holds = w.has_value();
    out.report = json{{"holds", out.holds}, {"member", f.members[g].name}};
    if (w)
      out.report["witness"] = json{{"graph", f.members[w->member].name}, {"n1", w->n1}, {"n2", w->n2}};
    else
      out.report["witness"] = nullptr;
  } else if (c.name == "unsafe") {
    const std::size_t g = member_of(f, c);
    const auto w = is_unsafe(f.members[g], need(c.rho, "--rho", c.name), f.horizon);
    out.holds = w.has_value();
    out.report = json{{"holds", out.holds}, {"member", f.members[g].name}};
    if (w)
      out.report["witness"] =
          json{{"i", w->i}, {"j", w->j}, {"l", w->l}, {"m", w->m}, {"m1", w->m1}, {"m2", w->m2}};
    else
      out.report["witness"] = nullptr;
  } else {
    throw InputError("unknown check '" + c.name + "'");
  }
  out.report["check"] = c.name;
  return out;
}

}  // namespace dynacct
