#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dynacct/simulator.hpp"

namespace dynacct {

inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

/// Exact distribution over joint machine states at the end of a round, for one fixed member graph.
/// Runs whose machines have equal fingerprints are merged; randomization points are enumerated.
class Distribution {
 public:
  using Key = std::vector<std::int64_t>;

  struct Branch {
    Rational prob;
    std::vector<MachinePtr> machines;
    std::int64_t obs = 0;  // interned observation history of the tracked agent
  };

  struct StepOptions {
    // The tracked-round action of one agent replaced by a fixed action.
    std::optional<Action> forced;
    // Keep only outcomes equal to this profile (conditioning on a realized prefix).
    const ActionProfile* require = nullptr;
    bool profile_key = false;
  };

  struct StepStats {
    Round round = 0;
    Rational mass = 0;                          // probability kept by `require`
    std::vector<Rational> utility;              // expected round utility per agent
    std::vector<Rational> punishments;          // expected punishments received per agent
    std::vector<std::pair<Key, Rational>> profiles;  // only with StepOptions::profile_key
  };

  Distribution(const SimConfig& cfg, std::optional<AgentId> tracked = std::nullopt,
               std::size_t cap = kDefaultEnumerationCap);
  Distribution(const Distribution& other);
  Distribution& operator=(const Distribution& other);
  Distribution(Distribution&&) noexcept = default;
  Distribution& operator=(Distribution&&) noexcept = default;

  Round round() const { return round_; }
  const SimConfig& config() const { return *cfg_; }
  std::size_t size() const { return branches_.size(); }
  const std::map<Key, Branch>& branches() const { return branches_; }
  Rational total_mass() const;

  StepStats step(const StepOptions& options);
  StepStats step() { return step(StepOptions{}); }

  // Machine-state fingerprint of the whole distribution (probabilities included, obs ignored).
  std::vector<std::pair<Key, Rational>> state_key() const;
  bool same_state(const Distribution& other) const;

  // Branches grouped by the tracked agent's observation history.
  std::vector<std::int64_t> observation_classes() const;
  // Branches of one class with probabilities renormalized to 1.
  Distribution restrict_to(std::int64_t obs) const;
  void normalize();

 private:
  struct Interner;

  std::shared_ptr<const SimConfig> cfg_;
  std::shared_ptr<const EvolvingGraph> graph_;
  std::optional<AgentId> tracked_;
  std::size_t cap_;
  std::shared_ptr<Interner> interner_;
  Round round_ = 0;
  std::map<Key, Branch> branches_;
};

Distribution::Key machines_key(const std::vector<MachinePtr>& machines);

// Exact E[discounted utility of i from round 1] conditioned on the realized prefix.
Rational expected_utility(const SimConfig& cfg, AgentId i, const std::vector<ActionProfile>& prefix = {},
                          std::size_t cap = kDefaultEnumerationCap);

// Expected punishments i receives over i-edges (j, m') with from < m' < from + rho, given the prefix.
Rational expected_punishments(const SimConfig& cfg, AgentId i, Round from, long rho,
                              const std::vector<ActionProfile>& prefix = {}, std::size_t cap = kDefaultEnumerationCap);

// Expected round utilities [round-1][agent] for rounds 1..cfg.horizon.
std::vector<std::vector<Rational>> expected_round_utilities(const SimConfig& cfg, std::size_t cap = kDefaultEnumerationCap);

}  // namespace dynacct
