#include "dynacct/machine_factory.hpp"

#include <sstream>

#include "dynacct/errors.hpp"
#include "dynacct/minimax.hpp"
#include "dynacct/sigma_gen.hpp"
#include "dynacct/sigma_val.hpp"

namespace dynacct {

using nlohmann::json;

MachinePtr make_protocol(const std::string& protocol, AgentId self, const ProtocolContext& ctx) {
  if (protocol == "sigma_val") return sigma_val(self, ctx);
  if (protocol == "sigma_gen") return sigma_gen(self, ctx);
  if (protocol == "safe_punisher") return safe_punisher(self, ctx);
  if (protocol == "minimax_punisher") return minimax_punisher(self, ctx);
  if (protocol == "always_defect") return std::make_unique<AlwaysDefectMachine>();
  throw InputError("unknown protocol '" + protocol + "'");
}

MachinePtr make_machine(const StrategySpec& spec, AgentId self, const ProtocolContext& ctx) {
  MachinePtr base = make_protocol(spec.protocol, self, ctx);
  if (!spec.deviation) return base;
  const DeviationSpec& d = *spec.deviation;
  switch (d.kind) {
    case DeviationSpec::Kind::OneShot: {
      const Round at = d.round;
      return std::make_unique<OneShotMachine>(
          std::move(base), [at](const LocalView& v) { return v.round == at; }, d.override_action, ctx.mode, ctx.n);
    }
    case DeviationSpec::Kind::SingleEvasive:
      return std::make_unique<SingleEvasiveMachine>(std::move(base), d.target, d.round);
    case DeviationSpec::Kind::AlwaysDefectUntil:
      return std::make_unique<AlwaysDefectUntilMachine>(std::move(base), d.round);
    case DeviationSpec::Kind::DualEvasive:
      return std::make_unique<DualEvasiveMachine>(std::move(base), d.dual);
    case DeviationSpec::Kind::LenientEvasive:
      return std::make_unique<LenientEvasiveMachine>(std::move(base), d.lenient);
  }
  throw InputError("unknown deviation kind");
}

std::string to_string(DeviationSpec::Kind kind) {
  switch (kind) {
    case DeviationSpec::Kind::OneShot: return "one_shot";
    case DeviationSpec::Kind::SingleEvasive: return "single_evasive";
    case DeviationSpec::Kind::AlwaysDefectUntil: return "always_defect_until";
    case DeviationSpec::Kind::DualEvasive: return "dual_evasive";
    case DeviationSpec::Kind::LenientEvasive: return "lenient_evasive";
  }
  return "?";
}

namespace {

DeviationSpec::Kind parse_kind(const std::string& s, const std::string& where) {
  for (auto k : {DeviationSpec::Kind::OneShot, DeviationSpec::Kind::SingleEvasive, DeviationSpec::Kind::AlwaysDefectUntil,
                 DeviationSpec::Kind::DualEvasive, DeviationSpec::Kind::LenientEvasive})
    if (to_string(k) == s) return k;
  throw InputError(where + ": unknown deviation kind '" + s + "'");
}

json template_to_json(const ActionTemplate& t) {
  json j = json::object();
  if (t.all) j["all"] = t.all->code();
  json per = json::object();
  for (const auto& [a, act] : t.per_neighbor) per[std::to_string(a)] = act.code();
  j["per_neighbor"] = per;
  return j;
}

ActionTemplate template_from_json(const json& j, const std::string& where) {
  ActionTemplate t;
  if (!j.is_object()) throw InputError(where + ": expected an object");
  if (j.contains("all")) t.all = IndividualAction::parse(j["all"].get<std::string>());
  if (j.contains("per_neighbor"))
    for (const auto& [key, code] : j["per_neighbor"].items())
      t.per_neighbor[std::stoi(key)] = IndividualAction::parse(code.get<std::string>());
  return t;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j[key].get<T>() : fallback;
}

}  // namespace

json strategy_to_json(const StrategySpec& spec) {
  if (!spec.deviation) return spec.protocol;
  const DeviationSpec& d = *spec.deviation;
  json dj;
  dj["kind"] = to_string(d.kind);
  dj["base"] = spec.protocol;
  switch (d.kind) {
    case DeviationSpec::Kind::OneShot:
      dj["round"] = d.round;
      dj["override"] = template_to_json(d.override_action);
      break;
    case DeviationSpec::Kind::SingleEvasive:
      dj["round"] = d.round;
      dj["target"] = d.target;
      break;
    case DeviationSpec::Kind::AlwaysDefectUntil:
      dj["round"] = d.round;
      break;
    case DeviationSpec::Kind::DualEvasive: {
      dj["n1"] = d.dual.n1;
      dj["n2"] = d.dual.n2;
      json defs = json::array();
      for (const auto& [r, j] : d.dual.defections) defs.push_back({{"round", r}, {"target", j}});
      dj["defections"] = defs;
      break;
    }
    case DeviationSpec::Kind::LenientEvasive:
      dj["enabled"] = d.lenient.enabled;
      dj["deviator"] = d.lenient.deviator;
      dj["partner"] = d.lenient.partner;
      dj["partner_round"] = d.lenient.partner_round;
      dj["strike_round"] = d.lenient.strike_round;
      break;
  }
  return json{{"deviation", dj}};
}

StrategySpec strategy_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return StrategySpec::honest(j.get<std::string>());
  if (!j.is_object() || !j.contains("deviation"))
    throw InputError(where + ": expected a protocol name or {\"deviation\": {...}}");
  const json& dj = j["deviation"];
  const std::string dw = where + ".deviation";
  try {
    StrategySpec spec;
    spec.protocol = dj.at("base").get<std::string>();
    DeviationSpec d;
    d.kind = parse_kind(dj.at("kind").get<std::string>(), dw);
    switch (d.kind) {
      case DeviationSpec::Kind::OneShot:
        d.round = dj.at("round").get<Round>();
        d.override_action = template_from_json(dj.at("override"), dw + ".override");
        break;
      case DeviationSpec::Kind::SingleEvasive:
        d.round = dj.at("round").get<Round>();
        d.target = dj.at("target").get<AgentId>();
        break;
      case DeviationSpec::Kind::AlwaysDefectUntil:
        d.round = dj.at("round").get<Round>();
        break;
      case DeviationSpec::Kind::DualEvasive:
        d.dual.n1 = dj.at("n1").get<std::vector<AgentId>>();
        d.dual.n2 = dj.at("n2").get<std::vector<AgentId>>();
        for (const json& e : get_or(dj, "defections", json::array()))
          d.dual.defections.emplace_back(e.at("round").get<Round>(), e.at("target").get<AgentId>());
        break;
      case DeviationSpec::Kind::LenientEvasive:
        d.lenient.enabled = get_or(dj, "enabled", true);
        d.lenient.deviator = dj.at("deviator").get<AgentId>();
        d.lenient.partner = dj.at("partner").get<AgentId>();
        d.lenient.partner_round = dj.at("partner_round").get<Round>();
        d.lenient.strike_round = dj.at("strike_round").get<Round>();
        break;
    }
    spec.deviation = std::move(d);
    return spec;
  } catch (const json::exception& e) {
    throw InputError(dw + ": " + e.what());
  }
}

std::pair<AgentId, StrategySpec> parse_deviation_flag(const std::string& text, const std::string& base_protocol) {
  std::optional<AgentId> agent;
  std::optional<Round> round;
  std::optional<AgentId> target;
  std::string kind;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    std::string key = part.substr(0, eq), value = eq == std::string::npos ? "" : part.substr(eq + 1);
    try {
      if (key == "agent") agent = std::stoi(value);
      else if (key == "round") round = std::stol(value);
      else if (key == "target") target = std::stoi(value);
      else if (eq == std::string::npos) kind = key;
      else throw InputError("unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw InputError("--deviate: bad value in '" + part + "'");
    }
  }
  if (!agent) throw InputError("--deviate: missing agent=K");
  StrategySpec spec;
  spec.protocol = base_protocol;
  DeviationSpec d;
  if (kind == "defect_all") {
    d.kind = DeviationSpec::Kind::OneShot;
    d.round = round.value_or(1);
    d.override_action = ActionTemplate::defect_all();
  } else if (kind == "defect") {
    if (!target) throw InputError("--deviate defect needs target=J");
    d.kind = DeviationSpec::Kind::OneShot;
    d.round = round.value_or(1);
    d.override_action.per_neighbor[*target] = IndividualAction::defect();
  } else if (kind == "single_evasive") {
    if (!target) throw InputError("--deviate single_evasive needs target=J");
    d.kind = DeviationSpec::Kind::SingleEvasive;
    d.round = round.value_or(1);
    d.target = *target;
  } else if (kind == "always_defect_until") {
    d.kind = DeviationSpec::Kind::AlwaysDefectUntil;
    d.round = round.value_or(1);
  } else {
    throw InputError("--deviate: unknown deviation '" + kind + "'");
  }
  spec.deviation = std::move(d);
  return {*agent, spec};
}

}  // namespace dynacct
