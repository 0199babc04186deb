#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dynacct/strategy.hpp"

namespace dynacct {

/// Per-neighbour override, with an optional action for every neighbour not listed.
struct ActionTemplate {
  std::optional<IndividualAction> all;
  std::map<AgentId, IndividualAction> per_neighbor;

  // Throws InputError if a listed agent is not a neighbour in this view.
  Action build(const LocalView& view, const Action& prescribed) const;
  static ActionTemplate defect_all() { return ActionTemplate{IndividualAction::defect(), {}}; }
};

using ViewPredicate = std::function<bool(const LocalView&)>;

/// base everywhere except the first matching view, where the override is played.
class OneShotMachine : public StrategyMachine {
 public:
  OneShotMachine(MachinePtr base, ViewPredicate at, ActionTemplate override_action, Mode mode, int n);
  OneShotMachine(const OneShotMachine& other);

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<OneShotMachine>(*this); }
  std::string name() const override { return "one_shot(" + base_->name() + ")"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override { return base_->payload_for(neighbor); }
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;
  std::size_t state_size() const override { return base_->state_size(); }

  const StrategyMachine& base() const { return *base_; }

 private:
  MachinePtr base_;
  ViewPredicate at_;
  ActionTemplate override_;
  Mode mode_;
  int n_;
  LocalView view_;
  bool firing_ = false;
  bool fired_ = false;
};

/// Defects j at round m and otherwise answers from a shadow of base that never saw the defection.
class SingleEvasiveMachine : public StrategyMachine {
 public:
  SingleEvasiveMachine(MachinePtr base, AgentId target, Round round);
  SingleEvasiveMachine(const SingleEvasiveMachine& other);

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<SingleEvasiveMachine>(*this); }
  std::string name() const override { return "single_evasive(" + shadow_->name() + ")"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override { return shadow_->payload_for(neighbor); }
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;
  std::size_t state_size() const override { return shadow_->state_size(); }

  const StrategyMachine& shadow() const { return *shadow_; }

 private:
  MachinePtr shadow_;
  AgentId target_;
  Round round_;
  LocalView view_;
  Round recorded_ = 0;
};

/// Defects every neighbour through round m; base (fed the real history) afterwards.
class AlwaysDefectUntilMachine : public StrategyMachine {
 public:
  AlwaysDefectUntilMachine(MachinePtr base, Round until);
  AlwaysDefectUntilMachine(const AlwaysDefectUntilMachine& other);

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<AlwaysDefectUntilMachine>(*this); }
  std::string name() const override { return "always_defect_until(" + base_->name() + ")"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override { return base_->payload_for(neighbor); }
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;
  std::size_t state_size() const override { return base_->state_size(); }

  const StrategyMachine& base() const { return *base_; }

 private:
  MachinePtr base_;
  Round until_;
  LocalView view_;
  Round recorded_ = 0;
};

/// Cut-vertex deviation: one shadow carries the deviated history and answers the agents in N1,
/// a second shadow that never deviated answers the agents in N2.
struct DualScript {
  std::vector<AgentId> n1;
  std::vector<AgentId> n2;
  std::vector<std::pair<Round, AgentId>> defections;  // toward agents of N1
};

class DualEvasiveMachine : public StrategyMachine {
 public:
  DualEvasiveMachine(MachinePtr base, DualScript script);
  DualEvasiveMachine(const DualEvasiveMachine& other);

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<DualEvasiveMachine>(*this); }
  std::string name() const override { return "dual_evasive(" + honest_->name() + ")"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override;
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;

 private:
  bool in_n1(AgentId j) const;

  MachinePtr honest_;
  MachinePtr deviated_;
  DualScript script_;
  LocalView view_;
};

/// Agent l ignores j's defection at m1 and answers everything from the state in which only i
/// deviated; in particular it defects i at m2.
struct LenientScript {
  bool enabled = true;
  AgentId deviator = 0;  // i
  AgentId partner = 0;   // j
  Round partner_round = 0;  // m1
  Round strike_round = 0;   // m2
};

class LenientEvasiveMachine : public StrategyMachine {
 public:
  LenientEvasiveMachine(MachinePtr base, LenientScript script);
  LenientEvasiveMachine(const LenientEvasiveMachine& other);

  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<LenientEvasiveMachine>(*this); }
  std::string name() const override { return "lenient_evasive(" + shadow_->name() + ")"; }
  void observe(const LocalView& view) override;
  Decision decide() const override;
  Payload payload_for(AgentId neighbor) const override { return shadow_->payload_for(neighbor); }
  void record(const RoundOutcome& outcome) override;
  void fingerprint(std::vector<std::int64_t>& out) const override;

 private:
  MachinePtr shadow_;
  LenientScript script_;
  LocalView view_;
  Round recorded_ = 0;
};

}  // namespace dynacct
