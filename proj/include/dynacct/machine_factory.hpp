#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "dynacct/deviations.hpp"
#include "dynacct/strategy.hpp"

namespace dynacct {

struct DeviationSpec {
  enum class Kind { OneShot, SingleEvasive, AlwaysDefectUntil, DualEvasive, LenientEvasive };

  Kind kind = Kind::OneShot;
  Round round = 0;                 // OneShot trigger round, SingleEvasive round, AlwaysDefectUntil bound
  AgentId target = 0;              // SingleEvasive
  ActionTemplate override_action;  // OneShot
  DualScript dual;
  LenientScript lenient;
};

/// A protocol by name ("sigma_val", "sigma_gen", "safe_punisher", "minimax_punisher",
/// "always_defect"), optionally wrapped in a deviation.
struct StrategySpec {
  std::string protocol;
  std::optional<DeviationSpec> deviation;

  static StrategySpec honest(std::string protocol) { return StrategySpec{std::move(protocol), std::nullopt}; }
};

MachinePtr make_protocol(const std::string& protocol, AgentId self, const ProtocolContext& ctx);
MachinePtr make_machine(const StrategySpec& spec, AgentId self, const ProtocolContext& ctx);

std::string to_string(DeviationSpec::Kind kind);

nlohmann::json strategy_to_json(const StrategySpec& spec);
// Accepts a protocol name or {"deviation": {"kind": ..., "base": ..., ...}}.
StrategySpec strategy_from_json(const nlohmann::json& j, const std::string& where);

// "agent=0,defect_all,round=1" and similar CLI shorthands; returns the agent and its strategy.
std::pair<AgentId, StrategySpec> parse_deviation_flag(const std::string& text, const std::string& base_protocol);

}  // namespace dynacct
