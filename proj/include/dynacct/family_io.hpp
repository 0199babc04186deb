#pragma once

#include <string>

#include <json.hpp>

#include "dynacct/evolving_graph.hpp"

namespace dynacct {

// Parse JSON text, reporting syntax errors as "line L, column C: ...".
nlohmann::json parse_json_text(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::string& path);

// Errors name the offending location, e.g. "members[1].cycle[0][2]".
GraphFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const GraphFamily& f);

GraphFamily load_family(const std::string& path);
void save_family(const GraphFamily& f, const std::string& path);

}  // namespace dynacct
