#pragma once

#include <string>
#include <vector>

#include "dynacct/scenario.hpp"

namespace dynacct {

struct BuiltinInfo {
  std::string id;
  std::string description;
  std::string anchor;
};

const std::vector<BuiltinInfo>& builtin_catalog();
bool is_builtin(const std::string& id);
Scenario builtin_scenario(const std::string& id);

// Degree-observing families on which sigma_gen is checked (n = 3 and n = 4).
std::vector<Scenario> gen_benchmark_scenarios();
// Timely-punishment families on which sigma_val is checked, one of them not connected.
std::vector<Scenario> val_benchmark_scenarios();

}  // namespace dynacct
