#include "dynacct/trace_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "dynacct/errors.hpp"

namespace dynacct {

using nlohmann::json;

json action_to_json(const Action& a) {
  json obj = json::object();
  for (const auto& [j, act] : a.per_neighbor) obj[std::to_string(j)] = act.code();
  return obj;
}

void write_trace_jsonl(const Trace& t, std::ostream& out) {
  for (Round m = 1; m <= t.rounds(); ++m) {
    const ActionProfile& p = t.history.profiles[static_cast<std::size_t>(m - 1)];
    json rec;
    rec["round"] = m;
    json actions = json::array();
    for (const Action& a : p.actions) actions.push_back(action_to_json(a));
    rec["actions"] = actions;
    json utils = json::array();
    for (const Rational& u : t.utilities[static_cast<std::size_t>(m - 1)]) utils.push_back(to_string(u));
    rec["utilities"] = utils;
    out << rec.dump() << "\n";
  }
}

Trace read_trace_jsonl(std::istream& in, std::shared_ptr<const EvolvingGraph> graph) {
  Trace t;
  t.history.graph = std::move(graph);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
      ActionProfile p;
      p.round = rec.at("round").get<Round>();
      const json& actions = rec.at("actions");
      for (std::size_t i = 0; i < actions.size(); ++i) {
        Action a;
        a.agent = static_cast<AgentId>(i);
        a.round = p.round;
        for (const auto& [key, code] : actions[i].items())
          a.per_neighbor[std::stoi(key)] = IndividualAction::parse(code.get<std::string>());
        p.actions.push_back(std::move(a));
      }
      std::vector<Rational> utils;
      for (const json& u : rec.at("utilities")) utils.push_back(parse_rational(u.get<std::string>()));
      t.history.profiles.push_back(std::move(p));
      t.utilities.push_back(std::move(utils));
    } catch (const std::exception& e) {
      throw InputError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return t;
}

void write_utility_csv(const Trace& t, std::ostream& out) {
  const std::size_t n = t.utilities.empty() ? 0 : t.utilities.front().size();
  out << "round";
  for (std::size_t i = 0; i < n; ++i) out << ",agent_" << i;
  out << "\n";
  for (std::size_t r = 0; r < t.utilities.size(); ++r) {
    out << (r + 1);
    for (const Rational& u : t.utilities[r]) out << "," << to_decimal(u);
    out << "\n";
  }
}

std::vector<std::vector<double>> read_utility_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      if (first) {
        first = false;
        continue;
      }
      row.push_back(to_double(parse_rational(cell)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dynacct
