#include <gtest/gtest.h>

#include "dynacct/builtins.hpp"
#include "dynacct/distribution.hpp"
#include "dynacct/equilibrium.hpp"
#include "dynacct/errors.hpp"
#include "dynacct/simulator.hpp"

using namespace dynacct;

namespace {

// Cooperates with everyone no matter what: nobody is ever punished.
class Pushover : public StrategyMachine {
 public:
  std::unique_ptr<StrategyMachine> clone() const override { return std::make_unique<Pushover>(*this); }
  std::string name() const override { return "pushover"; }
  void observe(const LocalView& v) override { view_ = v; }
  Decision decide() const override {
    Decision d;
    for (AgentId j : view_.neighbors) d.draws.push_back(Draw::certain(j, IndividualAction::cooperate()));
    return d;
  }
  Payload payload_for(AgentId) const override { return nullptr; }
  void record(const RoundOutcome&) override {}
  void fingerprint(std::vector<std::int64_t>& out) const override { out.push_back(std::min<Round>(view_.round, 1)); }

 private:
  LocalView view_;
};

SimConfig ring_gen() { return builtin_scenario("ring_connectivity").config(); }

}  // namespace

TEST(Verifier, SigmaGenRingPasses) {
  const SimConfig cfg = ring_gen();
  EXPECT_TRUE(on_path_cooperation(cfg, 20));
  for (AgentId i = 0; i < cfg.n(); ++i) {
    const auto r = verify_one_shot(cfg, i);
    EXPECT_TRUE(r.pass) << to_json(r).dump();
    EXPECT_LE(r.max_gain, r.tolerance);
    EXPECT_EQ(r.robust_depth, 2);
    EXPECT_GT(r.info_sets, 0u);
  }
}

TEST(Verifier, NonPunishingNeighboursAreExploited) {
  SimConfig cfg = ring_gen();
  for (AgentId j = 1; j < 4; ++j) cfg.machine_overrides[j] = std::make_shared<Pushover>();
  const auto r = verify_one_shot(cfg, 0);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.max_gain, Rational(2));  // one unit per defected neighbour, never answered
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->override_action.at(1), IndividualAction::defect());
  EXPECT_EQ(r.witness->override_action.at(3), IndividualAction::defect());
}

TEST(Verifier, EvasiveCandidateBeatsSigmaValWithoutTimeliness) {
  const Scenario s = builtin_scenario("timely_violation");
  const auto r = verify_one_shot(s.config(), 2, s.verify_options(2));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness && r.witness->candidate);
  EXPECT_EQ(*r.witness->candidate, "single_evasive");
  EXPECT_EQ(r.witness->round, 1);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].gain, Rational(1));
  EXPECT_EQ(r.max_gain, Rational(1));
}

TEST(Verifier, OneShotSearchAloneFindsTheBridgeDefection) {
  // Without candidates, the one-shot search finds the same gain: a defection across the bridge
  // is never answered.
  const Scenario s = builtin_scenario("timely_violation");
  const auto r = verify_one_shot(s.config(), 2);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.max_gain, Rational(1));
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->round, 1);
  EXPECT_EQ(r.witness->override_action.at(3), IndividualAction::defect());
}

TEST(Verifier, UnsafeLenientCandidateGainsOne) {
  const Scenario s = builtin_scenario("unsafe_three_agent");
  const auto r = verify_one_shot(s.config(), 2, s.verify_options(2));
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].label, "lenient_evasive");
  EXPECT_EQ(r.candidates[0].first_divergence, 3);
  EXPECT_EQ(r.candidates[0].gain, Rational(1));
  EXPECT_FALSE(on_path_cooperation(s.config(), 4));  // the scripted defections are on path
}

TEST(Verifier, DualEvasiveProfitsOnCutPair) {
  const Scenario s = builtin_scenario("fig2_ambiguous");
  const auto r = verify_one_shot(s.config(), 0, s.verify_options(0));
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_GT(r.candidates[0].gain, r.candidates[0].tolerance);
  EXPECT_FALSE(r.pass);
}

TEST(Verifier, ReportJsonFields) {
  const Scenario s = builtin_scenario("timely_violation");
  const auto j = to_json(verify_one_shot(s.config(), 2, s.verify_options(2)));
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(j["max_gain"], "1");
  EXPECT_EQ(j["witness"]["candidate"], "single_evasive");
  EXPECT_EQ(j["candidates"][0]["label"], "single_evasive");
}

TEST(Verifier, ConfigRejectedBeforeRunning) {
  SimConfig cfg = ring_gen();
  cfg.params.beta = Rational(1);  // below 1 + alpha
  EXPECT_THROW(cfg.validate(), InputError);
  EXPECT_THROW(verify_one_shot(cfg, 0), InputError);
}

TEST(Distribution, MassIsConservedAndBranchesMerge) {
  SimConfig cfg = ring_gen();
  cfg.strategies[0] = parse_deviation_flag("agent=0,defect,target=1,round=1", "sigma_gen").second;
  Distribution d(cfg);
  for (int r = 0; r < 12; ++r) {
    d.step();
    EXPECT_EQ(d.total_mass(), Rational(1));
  }
  EXPECT_EQ(d.size(), 1u);  // punish-or-cooperate draws leave the tables alike
}

TEST(Distribution, ExactExpectationMatchesMonteCarlo) {
  // Round 1 lacks the 0-2 edge, so agent 0's two defections are spread over three
  // neighbours in round 5 with probability 2/3 each.
  SimConfig cfg;
  cfg.family.n = 4;
  cfg.family.observation = ObservationModel::NeighborsAndDegrees;
  EvolvingGraph g;
  g.name = "k4";
  g.prefix = {RoundGraph(4, {{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})};
  g.cycle = {RoundGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})};
  cfg.family.members = {g};
  cfg.family.horizon = 2;
  cfg.rho = 2;
  cfg.horizon = 12;
  cfg.seed = 5;
  cfg.params = default_params(Mode::General, 4, 2);
  cfg.strategies.assign(4, StrategySpec::honest("sigma_gen"));
  cfg.strategies[0] = parse_deviation_flag("agent=0,defect_all,round=1", "sigma_gen").second;
  const Rational exact = expected_utility(cfg, 0);
  const auto mc = monte_carlo_utility(cfg, 0, 4000, 4);
  EXPECT_NEAR(mc.mean, to_double(exact), 5 * mc.std_error + 1e-12);
  EXPECT_GT(mc.std_error, 0.0);
  EXPECT_EQ(expected_punishments(cfg, 0, 1, 12) - expected_punishments(builtin_scenario("ring_connectivity").config(), 0, 1, 12),
            Rational(2));
}

TEST(Distribution, CapRefusesLargeEnumerations) {
  SimConfig cfg = builtin_scenario("ring_connectivity").config();
  cfg.strategies[0] = parse_deviation_flag("agent=0,defect_all,round=1", "sigma_gen").second;
  cfg.family.members[0].cycle[0] = RoundGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  cfg.family.members[0].prefix = {RoundGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})};
  Distribution d(cfg, std::nullopt, 2);
  EXPECT_THROW(
      {
        for (int r = 0; r < 8; ++r) d.step();
      },
      EnumerationRefused);
}

TEST(Distribution, ConditioningOnAZeroProbabilityPrefixFails) {
  const SimConfig cfg = ring_gen();
  SimConfig dev = cfg;
  dev.strategies[0] = parse_deviation_flag("agent=0,defect_all,round=1", "sigma_gen").second;
  const auto t = simulate(dev);
  EXPECT_THROW(expected_utility(cfg, 0, {t.history.profiles[0]}), InputError);
}
