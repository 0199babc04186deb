#include "dynacct/deviations.hpp"

#include <algorithm>

#include "dynacct/errors.hpp"

namespace dynacct {

namespace {

constexpr std::int64_t kPendingMarker = -1000003;

// Own actions in `outcome` replaced by `d`'s first choice toward the listed neighbours.
RoundOutcome with_own(const RoundOutcome& outcome, const Decision& d, const std::function<bool(AgentId)>& replace) {
  RoundOutcome masked = outcome;
  for (auto& [j, act] : masked.own.per_neighbor)
    if (replace(j)) act = d.draw_for(j).support.front().first;
  return masked;
}

}  // namespace

Action ActionTemplate::build(const LocalView& view, const Action& prescribed) const {
  for (const auto& [j, act] : per_neighbor)
    if (!view.has_neighbor(j))
      throw InputError("override names agent " + std::to_string(j) + ", not a neighbour at round " +
                       std::to_string(view.round));
  Action a = prescribed;
  for (AgentId j : view.neighbors) {
    if (auto it = per_neighbor.find(j); it != per_neighbor.end()) a.per_neighbor[j] = it->second;
    else if (all) a.per_neighbor[j] = *all;
  }
  return a;
}

OneShotMachine::OneShotMachine(MachinePtr base, ViewPredicate at, ActionTemplate override_action, Mode mode, int n)
    : base_(std::move(base)), at_(std::move(at)), override_(std::move(override_action)), mode_(mode), n_(n) {
  if (override_.all) check_legal(*override_.all, mode_, n_);
  for (const auto& [j, act] : override_.per_neighbor) check_legal(act, mode_, n_);
}

OneShotMachine::OneShotMachine(const OneShotMachine& other)
    : base_(other.base_->clone()),
      at_(other.at_),
      override_(other.override_),
      mode_(other.mode_),
      n_(other.n_),
      view_(other.view_),
      firing_(other.firing_),
      fired_(other.fired_) {}

void OneShotMachine::observe(const LocalView& view) {
  view_ = view;
  base_->observe(view);
  firing_ = !fired_ && at_(view);
}

Decision OneShotMachine::decide() const {
  Decision d = base_->decide();
  if (!firing_) return d;
  Action forced = override_.build(view_, d.mode_action(view_.agent, view_.round));
  // draws that the override leaves alone keep base's distribution
  for (auto& draw : d.draws) {
    const bool touched = override_.all || override_.per_neighbor.count(draw.neighbor);
    if (touched) draw = Draw::certain(draw.neighbor, forced.per_neighbor.at(draw.neighbor));
  }
  return d;
}

void OneShotMachine::record(const RoundOutcome& outcome) {
  base_->record(outcome);
  if (firing_) fired_ = true;
  firing_ = false;
}

void OneShotMachine::fingerprint(std::vector<std::int64_t>& out) const {
  base_->fingerprint(out);
  // once fired the wrapper is indistinguishable from its base
  if (!fired_) out.push_back(kPendingMarker);
}

SingleEvasiveMachine::SingleEvasiveMachine(MachinePtr base, AgentId target, Round round)
    : shadow_(std::move(base)), target_(target), round_(round) {}

SingleEvasiveMachine::SingleEvasiveMachine(const SingleEvasiveMachine& other)
    : shadow_(other.shadow_->clone()),
      target_(other.target_),
      round_(other.round_),
      view_(other.view_),
      recorded_(other.recorded_) {}

void SingleEvasiveMachine::observe(const LocalView& view) {
  if (view.round == round_ && !view.has_neighbor(target_))
    throw InputError("single evasive deviation: agent " + std::to_string(target_) + " is not a neighbour of agent " +
                     std::to_string(view.agent) + " at round " + std::to_string(round_));
  view_ = view;
  shadow_->observe(view);
}

Decision SingleEvasiveMachine::decide() const {
  Decision d = shadow_->decide();
  if (view_.round == round_) d.draw_for(target_) = Draw::certain(target_, IndividualAction::defect());
  return d;
}

void SingleEvasiveMachine::record(const RoundOutcome& outcome) {
  recorded_ = outcome.round;
  if (outcome.round != round_) {
    shadow_->record(outcome);
    return;
  }
  const Decision honest = shadow_->decide();
  shadow_->record(with_own(outcome, honest, [&](AgentId j) { return j == target_; }));
}

AlwaysDefectUntilMachine::AlwaysDefectUntilMachine(MachinePtr base, Round until) : base_(std::move(base)), until_(until) {}

AlwaysDefectUntilMachine::AlwaysDefectUntilMachine(const AlwaysDefectUntilMachine& other)
    : base_(other.base_->clone()), until_(other.until_), view_(other.view_), recorded_(other.recorded_) {}

void AlwaysDefectUntilMachine::observe(const LocalView& view) {
  view_ = view;
  base_->observe(view);
}

Decision AlwaysDefectUntilMachine::decide() const {
  if (view_.round > until_) return base_->decide();
  Decision d;
  for (AgentId j : view_.neighbors) d.draws.push_back(Draw::certain(j, IndividualAction::defect()));
  return d;
}

void SingleEvasiveMachine::fingerprint(std::vector<std::int64_t>& out) const {
  shadow_->fingerprint(out);
  if (recorded_ < round_) {
    out.push_back(kPendingMarker);
    out.push_back(round_ - recorded_);
  }
}

void AlwaysDefectUntilMachine::record(const RoundOutcome& outcome) {
  recorded_ = outcome.round;
  base_->record(outcome);
}

void AlwaysDefectUntilMachine::fingerprint(std::vector<std::int64_t>& out) const {
  base_->fingerprint(out);
  if (recorded_ < until_) {
    out.push_back(kPendingMarker);
    out.push_back(until_ - recorded_);
  }
}

DualEvasiveMachine::DualEvasiveMachine(MachinePtr base, DualScript script)
    : honest_(base->clone()), deviated_(std::move(base)), script_(std::move(script)) {
  std::sort(script_.n1.begin(), script_.n1.end());
  std::sort(script_.n2.begin(), script_.n2.end());
  for (const auto& [r, j] : script_.defections)
    if (!in_n1(j)) throw InputError("dual evasive script: scripted defections must target N1");
}

DualEvasiveMachine::DualEvasiveMachine(const DualEvasiveMachine& other)
    : honest_(other.honest_->clone()), deviated_(other.deviated_->clone()), script_(other.script_), view_(other.view_) {}

bool DualEvasiveMachine::in_n1(AgentId j) const { return std::binary_search(script_.n1.begin(), script_.n1.end(), j); }

void DualEvasiveMachine::observe(const LocalView& view) {
  for (AgentId j : view.neighbors)
    if (!in_n1(j) && !std::binary_search(script_.n2.begin(), script_.n2.end(), j))
      throw InputError("dual evasive script: neighbour " + std::to_string(j) + " is in neither side of the cut");
  view_ = view;
  honest_->observe(view);
  deviated_->observe(view);
}

Decision DualEvasiveMachine::decide() const {
  Decision toward_n1 = deviated_->decide();
  Decision toward_n2 = honest_->decide();
  Decision d;
  for (AgentId j : view_.neighbors) {
    Draw draw = in_n1(j) ? toward_n1.draw_for(j) : toward_n2.draw_for(j);
    for (const auto& [r, target] : script_.defections)
      if (r == view_.round && target == j) draw = Draw::certain(j, IndividualAction::defect());
    d.draws.push_back(std::move(draw));
  }
  return d;
}

Payload DualEvasiveMachine::payload_for(AgentId neighbor) const {
  return in_n1(neighbor) ? deviated_->payload_for(neighbor) : honest_->payload_for(neighbor);
}

void DualEvasiveMachine::record(const RoundOutcome& outcome) {
  const Decision dev = deviated_->decide();
  const Decision hon = honest_->decide();
  deviated_->record(with_own(outcome, dev, [&](AgentId j) { return !in_n1(j); }));
  // the honest shadow saw plain cooperation from N1
  RoundOutcome masked = with_own(outcome, hon, [&](AgentId j) { return in_n1(j); });
  for (auto& msg : masked.received)
    if (in_n1(msg.from)) {
      msg.action = IndividualAction::cooperate();
      msg.payload = nullptr;
    }
  honest_->record(masked);
}

void DualEvasiveMachine::fingerprint(std::vector<std::int64_t>& out) const {
  honest_->fingerprint(out);
  deviated_->fingerprint(out);
  for (const auto& [r, j] : script_.defections)
    if (r > view_.round) {
      out.push_back(r - view_.round);
      out.push_back(j);
    }
}

LenientEvasiveMachine::LenientEvasiveMachine(MachinePtr base, LenientScript script)
    : shadow_(std::move(base)), script_(script) {}

LenientEvasiveMachine::LenientEvasiveMachine(const LenientEvasiveMachine& other)
    : shadow_(other.shadow_->clone()), script_(other.script_), view_(other.view_), recorded_(other.recorded_) {}

void LenientEvasiveMachine::observe(const LocalView& view) {
  view_ = view;
  shadow_->observe(view);
}

Decision LenientEvasiveMachine::decide() const {
  Decision d = shadow_->decide();
  if (script_.enabled && view_.round == script_.strike_round && view_.has_neighbor(script_.deviator))
    d.draw_for(script_.deviator) = Draw::certain(script_.deviator, IndividualAction::defect());
  return d;
}

void LenientEvasiveMachine::record(const RoundOutcome& outcome) {
  recorded_ = outcome.round;
  if (!script_.enabled || outcome.round != script_.partner_round) {
    shadow_->record(outcome);
    return;
  }
  RoundOutcome masked = outcome;
  for (auto& msg : masked.received)
    if (msg.from == script_.partner && msg.action.kind == ActionKind::Defect) {
      msg.action = IndividualAction::cooperate();
      msg.payload = nullptr;
    }
  shadow_->record(masked);
}

void LenientEvasiveMachine::fingerprint(std::vector<std::int64_t>& out) const {
  shadow_->fingerprint(out);
  if (script_.enabled && recorded_ < script_.strike_round) {
    out.push_back(kPendingMarker);
    out.push_back(script_.strike_round - recorded_);
  }
}

}  // namespace dynacct
