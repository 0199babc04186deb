#include "dynacct/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynacct {

Draw& Decision::draw_for(AgentId neighbor) {
  for (auto& d : draws)
    if (d.neighbor == neighbor) return d;
  throw std::out_of_range("no draw toward agent " + std::to_string(neighbor));
}

const Draw& Decision::draw_for(AgentId neighbor) const {
  return const_cast<Decision*>(this)->draw_for(neighbor);
}

bool Decision::deterministic() const {
  return std::all_of(draws.begin(), draws.end(), [](const Draw& d) { return d.deterministic(); });
}

Action Decision::mode_action(AgentId agent, Round round) const {
  Action a;
  a.agent = agent;
  a.round = round;
  for (const auto& d : draws) a.per_neighbor[d.neighbor] = d.support.front().first;
  return a;
}

Decision Decision::certain(const Action& a) {
  Decision d;
  for (const auto& [j, act] : a.per_neighbor) d.draws.push_back(Draw::certain(j, act));
  return d;
}

namespace {

// Uniform integer in [0, bound) by rejection; bound >= 1.
mpz_class uniform_below(const mpz_class& bound, Rng& rng) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  while (true) {
    mpz_class x = 0;
    std::size_t have = 0;
    while (have < bits) {
      mpz_class chunk(static_cast<unsigned long>(rng()));
      x = (x << 64) + chunk;
      have += 64;
    }
    x >>= static_cast<mp_bitcnt_t>(have - bits);
    if (x < bound) return x;
  }
}

}  // namespace

Action sample(const Decision& d, AgentId agent, Round round, Rng& rng) {
  Action a;
  a.agent = agent;
  a.round = round;
  for (const auto& draw : d.draws) {
    if (draw.deterministic()) {
      a.per_neighbor[draw.neighbor] = draw.support.front().first;
      continue;
    }
    mpz_class den = 1;
    for (const auto& [act, p] : draw.support) {
      mpz_class g;
      mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), p.get_den().get_mpz_t());
      den = g;
    }
    mpz_class u = uniform_below(den, rng);
    mpz_class acc = 0;
    IndividualAction chosen = draw.support.back().first;
    for (const auto& [act, p] : draw.support) {
      acc += p.get_num() * (den / p.get_den());
      if (u < acc) {
        chosen = act;
        break;
      }
    }
    a.per_neighbor[draw.neighbor] = chosen;
  }
  return a;
}

const ReceivedMessage* RoundOutcome::from(AgentId j) const {
  for (const auto& r : received)
    if (r.from == j) return &r;
  return nullptr;
}

}  // namespace dynacct
