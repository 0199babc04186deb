#include "dynacct/family_io.hpp"

#include <fstream>
#include <sstream>

#include "dynacct/errors.hpp"

namespace dynacct {

using nlohmann::json;

nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<long>();
}

std::vector<RoundGraph> rounds_from_json(const json& arr, int n, const std::string& where) {
  if (!arr.is_array()) throw InputError(where + ": expected a list of rounds");
  std::vector<RoundGraph> out;
  for (std::size_t r = 0; r < arr.size(); ++r) {
    const std::string rw = where + "[" + std::to_string(r) + "]";
    const json& edges = arr[r];
    if (!edges.is_array()) throw InputError(rw + ": expected a list of edges");
    RoundGraph g(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string ew = rw + "[" + std::to_string(e) + "]";
      const json& pair = edges[e];
      if (!pair.is_array() || pair.size() != 2) throw InputError(ew + ": an edge is a pair [u, v]");
      long u = as_integer(pair[0], ew), v = as_integer(pair[1], ew);
      if (u == v) throw InputError(ew + ": self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")");
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw InputError(ew + ": agent id out of range [0," + std::to_string(n) + ")");
      g.add_edge(static_cast<AgentId>(u), static_cast<AgentId>(v));
    }
    out.push_back(std::move(g));
  }
  return out;
}

json rounds_to_json(const std::vector<RoundGraph>& rounds) {
  json arr = json::array();
  for (const auto& g : rounds) {
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    arr.push_back(edges);
  }
  return arr;
}

}  // namespace

GraphFamily family_from_json(const json& j) {
  GraphFamily f;
  long n = as_integer(field(j, "n", "family"), "family.n");
  if (n < 1) throw InputError("family.n: must be >= 1");
  f.n = static_cast<int>(n);
  const json& obs = field(j, "observation", "family");
  if (!obs.is_string()) throw InputError("family.observation: expected a string");
  try {
    f.observation = parse_observation(obs.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(std::string("family.observation: ") + e.what());
  }
  f.horizon = as_integer(field(j, "horizon", "family"), "family.horizon");
  const json& members = field(j, "members", "family");
  if (!members.is_array() || members.empty()) throw InputError("family.members: expected a non-empty list");
  for (std::size_t k = 0; k < members.size(); ++k) {
    const std::string where = "members[" + std::to_string(k) + "]";
    EvolvingGraph g;
    const json& m = members[k];
    if (m.contains("name")) {
      if (!m["name"].is_string()) throw InputError(where + ".name: expected a string");
      g.name = m["name"].get<std::string>();
    } else {
      g.name = "G" + std::to_string(k + 1);
    }
    g.prefix = m.contains("prefix") ? rounds_from_json(m["prefix"], f.n, where + ".prefix") : std::vector<RoundGraph>{};
    g.cycle = rounds_from_json(field(m, "cycle", where), f.n, where + ".cycle");
    if (g.cycle.empty()) throw InputError(where + ".cycle: must contain at least one round");
    f.members.push_back(std::move(g));
  }
  f.validate();
  return f;
}

json family_to_json(const GraphFamily& f) {
  json out;
  out["n"] = f.n;
  out["observation"] = to_string(f.observation);
  out["horizon"] = f.horizon;
  json members = json::array();
  for (const auto& g : f.members) {
    json m;
    m["name"] = g.name;
    m["prefix"] = rounds_to_json(g.prefix);
    m["cycle"] = rounds_to_json(g.cycle);
    members.push_back(m);
  }
  out["members"] = members;
  return out;
}

GraphFamily load_family(const std::string& path) {
  json j = read_json_file(path);
  try {
    return family_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_family(const GraphFamily& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << family_to_json(f).dump(2) << "\n";
}

}  // namespace dynacct
