#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include <json.hpp>

#include "dynacct/game.hpp"

namespace dynacct {

// One JSON object per line: {"round", "actions": [ {neighbour: code} per agent ], "utilities": ["p/q" per agent]}.
void write_trace_jsonl(const Trace& t, std::ostream& out);
Trace read_trace_jsonl(std::istream& in, std::shared_ptr<const EvolvingGraph> graph);

// Header "round,agent_0,...", then one row of decimal utilities per round.
void write_utility_csv(const Trace& t, std::ostream& out);
std::vector<std::vector<double>> read_utility_csv(std::istream& in);

nlohmann::json action_to_json(const Action& a);

}  // namespace dynacct
