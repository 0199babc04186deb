#include <gtest/gtest.h>

#include "dynacct/distribution.hpp"
#include "dynacct/errors.hpp"
#include "dynacct/machine_factory.hpp"
#include "dynacct/minimax.hpp"
#include "dynacct/sigma_gen.hpp"
#include "dynacct/sigma_val.hpp"
#include "dynacct/simulator.hpp"

using namespace dynacct;

namespace {

SimConfig constant_cfg(RoundGraph r, const std::string& protocol, Mode mode, ObservationModel obs, long rho, Round horizon) {
  SimConfig c;
  c.family.n = r.n();
  c.family.observation = obs;
  c.family.members.push_back(constant_graph(r, "g"));
  c.family.horizon = 1;
  c.rho = rho;
  c.horizon = horizon;
  c.params = default_params(mode, r.n(), rho);
  c.strategies.assign(static_cast<std::size_t>(r.n()), StrategySpec::honest(protocol));
  return c;
}

StrategySpec defect_at(const std::string& protocol, Round m, std::vector<AgentId> victims) {
  DeviationSpec d;
  d.kind = DeviationSpec::Kind::OneShot;
  d.round = m;
  for (AgentId v : victims) d.override_action.per_neighbor[v] = IndividualAction::defect();
  StrategySpec s = StrategySpec::honest(protocol);
  s.deviation = d;
  return s;
}

const RoundGraph kTriangle(3, {{0, 1}, {1, 2}, {0, 2}});
const RoundGraph kRing(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

std::string act(const Trace& t, Round m, AgentId from, AgentId to) {
  return t.history.profiles[static_cast<std::size_t>(m - 1)].actions[static_cast<std::size_t>(from)].toward(to).code();
}

}  // namespace

TEST(SigmaVal, HonestPlayCooperates) {
  const auto t = simulate(constant_cfg(kTriangle, "sigma_val", Mode::Valuable, ObservationModel::NeighborsOnly, 2, 6));
  for (Round m = 1; m <= 6; ++m)
    for (AgentId i = 0; i < 3; ++i)
      for (AgentId j = 0; j < 3; ++j)
        if (i != j) EXPECT_EQ(act(t, m, i, j), "C");
}

TEST(SigmaVal, AccusationsSpreadAndExpire) {
  // 0 defects 1 in round 1; 1 punishes in rounds 2-3, 2 hears in round 2 and punishes in round 3.
  auto cfg = constant_cfg(kTriangle, "sigma_val", Mode::Valuable, ObservationModel::NeighborsOnly, 2, 5);
  cfg.strategies[0] = defect_at("sigma_val", 1, {1});
  const auto t = simulate(cfg);
  EXPECT_EQ(act(t, 1, 0, 1), "D");
  EXPECT_EQ(act(t, 1, 0, 2), "C");
  EXPECT_EQ(act(t, 2, 1, 0), "PP1");
  EXPECT_EQ(act(t, 2, 2, 0), "C");
  EXPECT_EQ(act(t, 3, 1, 0), "PP1");
  EXPECT_EQ(act(t, 3, 2, 0), "PP1");
  EXPECT_EQ(act(t, 4, 1, 0), "C");
  EXPECT_EQ(act(t, 4, 2, 0), "C");
  // the deviator keeps cooperating and is never accused by the others of anything else
  EXPECT_EQ(act(t, 2, 0, 1), "C");
}

TEST(SigmaVal, CountIsCappedAtNMinusOne) {
  // rho = 3 on a 3-agent triangle: defecting both neighbours in two rounds yields up to 4
  // accusations, but a punishment count never exceeds n - 1 = 2.
  auto cfg = constant_cfg(kTriangle, "sigma_val", Mode::Valuable, ObservationModel::NeighborsOnly, 3, 6);
  DeviationSpec d;
  d.kind = DeviationSpec::Kind::AlwaysDefectUntil;
  d.round = 2;
  cfg.strategies[0] = StrategySpec{"sigma_val", d};
  const auto t = simulate(cfg);
  for (Round m = 1; m <= 6; ++m)
    for (AgentId j : {1, 2}) {
      const auto a = t.history.profiles[static_cast<std::size_t>(m - 1)].actions[static_cast<std::size_t>(j)].toward(0);
      EXPECT_LE(a.count, 2);
    }
  EXPECT_EQ(act(t, 3, 1, 0), "PP2");
}

TEST(SigmaVal, ModeMismatchRejected) {
  ProtocolContext ctx{3, 2, Mode::General, ObservationModel::NeighborsOnly};
  EXPECT_THROW(sigma_val(0, ctx), InputError);
  ctx.mode = Mode::Valuable;
  EXPECT_THROW(safe_punisher(0, ctx), InputError);
  EXPECT_THROW(make_protocol("no_such_protocol", 0, ctx), InputError);
}

TEST(SigmaGen, NeedsDegreesAndGeneralMode) {
  ProtocolContext ctx{4, 2, Mode::General, ObservationModel::NeighborsOnly};
  EXPECT_THROW(sigma_gen(0, ctx), InputError);
  ctx.observation = ObservationModel::NeighborsAndDegrees;
  ctx.mode = Mode::Valuable;
  EXPECT_THROW(sigma_gen(0, ctx), InputError);
  ctx.mode = Mode::General;
  EXPECT_NO_THROW(sigma_gen(0, ctx));
}

TEST(SigmaGen, PunishmentLandsNRoundsLater) {
  // Ring of 4: agent 0 defects both neighbours at round 1. pend(0, 5) = deg = 2 = its round-5
  // degree, so both neighbours punish with probability 1 in round 5 and never again.
  auto cfg = constant_cfg(kRing, "sigma_gen", Mode::General, ObservationModel::NeighborsAndDegrees, 2, 14);
  cfg.strategies[0] = defect_at("sigma_gen", 1, {1, 3});
  const auto run = simulate_recorded(cfg, true);
  const auto& t = run.trace;
  for (Round m = 2; m <= 14; ++m)
    for (AgentId j : {1, 3}) EXPECT_EQ(act(t, m, j, 0), m == 5 ? "P" : "C") << "round " << m;
  const auto* g = dynamic_cast<const GenMachine*>(run.records[3].machines_after[2].get());
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->pending(0, 5), 2);  // held by agent 2 at the end of round 4, via its neighbours
  EXPECT_EQ(g->report(1, 0, 1), std::nullopt);  // dropped from the window by then
  for (const auto& rec : run.records)
    for (const auto& m : rec.machines_after) EXPECT_LE(m->state_size(), GenMachine::state_bound(4));
}

TEST(SigmaGen, OneDefectionCostsTheWholeDegree) {
  // Defecting only one neighbour still earns deg expected punishments.
  auto cfg = constant_cfg(kRing, "sigma_gen", Mode::General, ObservationModel::NeighborsAndDegrees, 2, 12);
  const Rational honest = expected_punishments(cfg, 0, 1, 12);
  cfg.strategies[0] = defect_at("sigma_gen", 1, {1});
  EXPECT_EQ(expected_punishments(cfg, 0, 1, 12) - honest, Rational(2));
}

TEST(SigmaGen, FractionalPendingRandomizes) {
  // K4 minus the 0-2 edge at round 1, then K4: agent 0 has degree 2 at round 1 and 3 afterwards,
  // so pend = 2 is spread over 3 neighbours with probability 2/3 each.
  SimConfig cfg = constant_cfg(RoundGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), "sigma_gen", Mode::General,
                               ObservationModel::NeighborsAndDegrees, 2, 10);
  cfg.family.members[0].prefix = {RoundGraph(4, {{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})};
  cfg.family.horizon = 2;
  cfg.strategies[0] = defect_at("sigma_gen", 1, {1, 3});
  std::vector<MachinePtr> machines = build_machines(cfg);
  const auto& g = cfg.graph();
  for (Round m = 1; m <= 4; ++m) {
    auto ds = decide_all(g, m, cfg.family.observation, machines);
    ActionProfile p;
    p.round = m;
    for (AgentId i = 0; i < 4; ++i) p.actions.push_back(ds[static_cast<std::size_t>(i)].mode_action(i, m));
    play_round(g, m, machines, p);
  }
  auto ds = decide_all(g, 5, cfg.family.observation, machines);
  const Draw& d = ds[1].draw_for(0);
  ASSERT_EQ(d.support.size(), 2u);
  EXPECT_EQ(d.support[0].first, IndividualAction::punish());
  EXPECT_EQ(d.support[0].second, Rational(2, 3));
  EXPECT_EQ(d.support[1].second, Rational(1, 3));
}

TEST(SafePunisher, PunishesWithinWindow) {
  auto cfg = constant_cfg(kTriangle, "safe_punisher", Mode::General, ObservationModel::NeighborsOnly, 2, 5);
  cfg.strategies[0] = defect_at("safe_punisher", 1, {1});
  const auto t = simulate(cfg);
  EXPECT_EQ(act(t, 2, 1, 0), "P");
  EXPECT_EQ(act(t, 3, 2, 0), "P");
  EXPECT_EQ(act(t, 4, 1, 0), "C");
}

TEST(Minimax, CooperatesOnPathAndPunishesByDefection) {
  auto cfg = constant_cfg(kTriangle, "minimax_punisher", Mode::General, ObservationModel::NeighborsOnly, 2, 6);
  const auto honest = simulate(cfg);
  for (Round m = 1; m <= 6; ++m) EXPECT_EQ(act(honest, m, 1, 0), "C");
  cfg.strategies[0] = defect_at("minimax_punisher", 1, {1});
  const auto t = simulate(cfg);
  EXPECT_EQ(act(t, 2, 1, 0), "D");
}

TEST(AlwaysDefect, DefectsEveryone) {
  auto cfg = constant_cfg(kTriangle, "always_defect", Mode::General, ObservationModel::NeighborsOnly, 2, 3);
  const auto t = simulate(cfg);
  EXPECT_EQ(act(t, 3, 2, 1), "D");
}
