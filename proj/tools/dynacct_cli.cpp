// Command line front end: family checks, simulation, equilibrium verification, builtin catalog.
// Exit status: 0 pass, 1 fail, 2 input error, 3 enumeration refused.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynacct/builtins.hpp"
#include "dynacct/equilibrium.hpp"
#include "dynacct/errors.hpp"
#include "dynacct/family_io.hpp"
#include "dynacct/rational.hpp"
#include "dynacct/scenario.hpp"
#include "dynacct/simulator.hpp"
#include "dynacct/trace_io.hpp"

using nlohmann::json;
using namespace dynacct;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitRefused = 3;

Scenario resolve_scenario(const std::string& ref) {
  if (is_builtin(ref)) return builtin_scenario(ref);
  return load_scenario(ref);
}

struct CheckArgs {
  std::string name;
  std::string family_path;
  std::string scenario;
  std::optional<long> rho;
  std::optional<Round> m_star;
  std::optional<std::string> member;
  std::optional<AgentId> agent, partner;
  std::optional<Round> round;
};

int cmd_check(const CheckArgs& a) {
  if (a.family_path.empty() == a.scenario.empty()) throw InputError("check needs exactly one of --family or --scenario");
  GraphFamily f;
  CheckSpec spec;
  spec.name = a.name;
  if (!a.scenario.empty()) {
    const Scenario s = resolve_scenario(a.scenario);
    f = s.family;
    for (const auto& c : s.checks)
      if (c.name == a.name) spec = c;
  } else {
    f = load_family(a.family_path);
  }
  if (a.rho) spec.rho = a.rho;
  if (a.m_star) spec.m_star = a.m_star;
  if (a.member) spec.member = a.member;
  if (a.agent) spec.agent = a.agent;
  if (a.partner) spec.partner = a.partner;
  if (a.round) spec.round = a.round;
  const CheckOutcome out = run_check(f, spec);
  json j = out.report;
  j["check"] = spec.name;
  j["holds"] = out.holds;
  std::cout << j.dump(2) << "\n";
  return out.holds ? kExitPass : kExitFail;
}

struct SimArgs {
  std::string scenario;
  std::optional<Round> horizon;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> deviate;
  std::string out;
  std::string format = "json";
  std::size_t samples = 0;
  unsigned threads = 1;
};

int cmd_simulate(const SimArgs& a) {
  const Scenario s = resolve_scenario(a.scenario);
  SimConfig cfg = s.config();
  if (a.horizon) cfg.horizon = *a.horizon;
  if (a.seed) cfg.seed = *a.seed;
  for (const auto& d : a.deviate) {
    const std::string base = cfg.strategies.empty() ? "sigma_val" : cfg.strategies.front().protocol;
    auto [agent, spec] = parse_deviation_flag(d, base);
    if (agent < 0 || agent >= cfg.n()) throw InputError("--deviate: agent out of range");
    spec.protocol = cfg.strategies[static_cast<std::size_t>(agent)].protocol;
    cfg.strategies[static_cast<std::size_t>(agent)] = spec;
  }
  cfg.validate();
  const Trace t = simulate(cfg);
  if (!a.out.empty()) {
    std::ofstream jl(a.out, std::ios::binary);
    if (!jl) throw InputError("cannot write '" + a.out + "'");
    write_trace_jsonl(t, jl);
    std::ofstream csv(a.out + ".csv", std::ios::binary);
    if (!csv) throw InputError("cannot write '" + a.out + ".csv'");
    write_utility_csv(t, csv);
  }
  std::vector<Rational> total;
  std::vector<long> punished(static_cast<std::size_t>(cfg.n()), 0);
  for (AgentId i = 0; i < cfg.n(); ++i) total.push_back(discounted_utility(t, i, 1, cfg.params));
  for (const auto& p : t.history.profiles)
    for (AgentId i = 0; i < cfg.n(); ++i)
      for (const auto& [nb, act] : p.actions[static_cast<std::size_t>(i)].per_neighbor)
        if (act.punishes())
          ++punished[static_cast<std::size_t>(nb)];

  std::vector<MonteCarloResult> mc;
  if (a.samples > 0)
    for (AgentId i = 0; i < cfg.n(); ++i) mc.push_back(monte_carlo_utility(cfg, i, a.samples, a.threads));

  if (a.format == "csv") {
    std::cout << "agent,discounted_utility,punishments_received";
    if (!mc.empty()) std::cout << ",mc_mean,mc_std_error";
    std::cout << "\n";
    for (AgentId i = 0; i < cfg.n(); ++i) {
      std::cout << i << "," << to_decimal(total[static_cast<std::size_t>(i)], 12) << ","
                << punished[static_cast<std::size_t>(i)];
      if (!mc.empty()) std::cout << "," << mc[static_cast<std::size_t>(i)].mean << "," << mc[static_cast<std::size_t>(i)].std_error;
      std::cout << "\n";
    }
  } else {
    json j;
    j["scenario"] = s.name;
    j["rounds"] = t.rounds();
    j["seed"] = cfg.seed;
    json agents = json::array();
    for (AgentId i = 0; i < cfg.n(); ++i) {
      json e;
      e["agent"] = i;
      e["discounted_utility"] = to_string(total[static_cast<std::size_t>(i)]);
      e["discounted_utility_decimal"] = to_decimal(total[static_cast<std::size_t>(i)], 12);
      e["punishments_received"] = punished[static_cast<std::size_t>(i)];
      if (!mc.empty()) {
        e["mc_mean"] = mc[static_cast<std::size_t>(i)].mean;
        e["mc_std_error"] = mc[static_cast<std::size_t>(i)].std_error;
        e["mc_samples"] = mc[static_cast<std::size_t>(i)].samples;
      }
      agents.push_back(e);
    }
    j["agents"] = agents;
    if (!a.out.empty()) j["trace"] = {a.out, a.out + ".csv"};
    std::cout << j.dump(2) << "\n";
  }
  return kExitPass;
}

struct VerifyArgs {
  std::string scenario;
  std::optional<int> robust_depth;
  std::optional<Round> horizon;
  std::optional<Round> last_deviation_round;
  std::vector<AgentId> agents;
  std::size_t cap = kDefaultEnumerationCap;
};

int cmd_verify(const VerifyArgs& a) {
  Scenario s = resolve_scenario(a.scenario);
  if (a.robust_depth) s.robust_depth = *a.robust_depth;
  if (a.horizon) s.horizon = *a.horizon;
  s.validate();
  const SimConfig cfg = s.config();

  json j;
  j["scenario"] = s.name;
  std::string detail;
  const bool coop = on_path_cooperation(cfg, cfg.horizon, &detail);
  j["on_path_cooperation"] = coop;
  if (!coop) j["on_path_detail"] = detail;

  std::vector<AgentId> agents = a.agents.empty() ? s.verify_agents : a.agents;
  if (agents.empty())
    for (AgentId i = 0; i < cfg.n(); ++i) agents.push_back(i);
  bool all = coop;
  json reports = json::array();
  for (AgentId i : agents) {
    if (i < 0 || i >= cfg.n()) throw InputError("--agent out of range");
    VerifyOptions o = s.verify_options(i);
    if (a.last_deviation_round) o.last_deviation_round = *a.last_deviation_round;
    o.cap = a.cap;
    const EquilibriumReport r = verify_one_shot(cfg, i, o);
    all = all && r.pass;
    reports.push_back(to_json(r));
  }
  j["reports"] = reports;
  j["verdict"] = all ? "pass" : "fail";
  std::cout << j.dump(2) << "\n";
  return all ? kExitPass : kExitFail;
}

int cmd_scenario_list(const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& b : builtin_catalog()) arr.push_back({{"id", b.id}, {"description", b.description}, {"anchor", b.anchor}});
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& b : builtin_catalog()) std::cout << b.id << "\t" << b.description << "\t[" << b.anchor << "]\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynacct: accountability in repeated pairwise exchanges on evolving graphs"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "run a family checker and print its verdict");
  check->add_option("name", ca.name, "timely | connectivity | eventual_dist | ambiguous_po | unsafe")->required();
  check->add_option("--family", ca.family_path, "family JSON file");
  check->add_option("--scenario", ca.scenario, "scenario file or builtin id");
  check->add_option("--rho", ca.rho, "punishment window");
  check->add_option("--m-star", ca.m_star, "rounds up to m* are exempt");
  check->add_option("--member", ca.member, "member graph name");
  check->add_option("--agent", ca.agent, "deviating agent (0-based)");
  check->add_option("--partner", ca.partner, "victim agent (0-based)");
  check->add_option("--round", ca.round, "deviation round");

  SimArgs sa;
  auto* sim = app.add_subcommand("simulate", "play a scenario and write its trace");
  sim->add_option("--scenario", sa.scenario, "scenario file or builtin id")->required();
  sim->add_option("--horizon", sa.horizon, "rounds to play");
  sim->add_option("--seed", sa.seed, "random seed");
  sim->add_option("--deviate", sa.deviate, "e.g. agent=0,defect_all,round=1 (repeatable)");
  sim->add_option("--out", sa.out, "trace path (JSONL); the utility matrix goes to PATH.csv");
  sim->add_option("--format", sa.format, "summary format")->check(CLI::IsMember({"json", "csv"}));
  sim->add_option("--samples", sa.samples, "Monte Carlo samples per agent (0: none)");
  sim->add_option("--threads", sa.threads, "Monte Carlo worker threads");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "check on-path cooperation and one-shot deviations");
  ver->add_option("--scenario", va.scenario, "scenario file or builtin id")->required();
  ver->add_option("--robust-depth", va.robust_depth, "1: on-path only; 2: also after one own deviation");
  ver->add_option("--horizon", va.horizon, "verification horizon");
  ver->add_option("--last-deviation-round", va.last_deviation_round, "stop the deviation scan at this round");
  ver->add_option("--agent", va.agents, "agents to verify (default: the scenario's list, else all)");
  ver->add_option("--enumeration-cap", va.cap, "maximum live branches in exact enumeration")
      ->check(CLI::PositiveNumber);

  std::string list_format = "text";
  auto* scen = app.add_subcommand("scenario", "builtin scenarios");
  scen->require_subcommand(1);
  auto* list = scen->add_subcommand("list", "print builtin ids with descriptions");
  list->add_option("--format", list_format)->check(CLI::IsMember({"text", "json"}));
  std::string show_id;
  auto* show = scen->add_subcommand("show", "print a builtin scenario as JSON");
  show->add_option("id", show_id)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*check) return cmd_check(ca);
    if (*sim) return cmd_simulate(sa);
    if (*ver) return cmd_verify(va);
    if (*list) return cmd_scenario_list(list_format);
    if (*show) {
      std::cout << scenario_to_json(builtin_scenario(show_id)).dump(2) << "\n";
      return kExitPass;
    }
  } catch (const EnumerationRefused& e) {
    std::cerr << "enumeration refused: " << e.what() << " (branching " << e.branching() << ")\n";
    return kExitRefused;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
