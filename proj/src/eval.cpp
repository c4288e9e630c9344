#include "sgs/eval.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace sgs {

AdversaryStrategy AdversaryStrategy::from_scheme(Vertex target, unsigned scheme) {
  AdversaryStrategy a;
  a.target = target;
  a.reaction[0] = (scheme & 4U) ? Reaction::flee : Reaction::attack;
  a.reaction[1] = (scheme & 2U) ? Reaction::flee : Reaction::attack;
  a.reaction[2] = (scheme & 1U) ? Reaction::flee : Reaction::attack;
  return a;
}

unsigned AdversaryStrategy::scheme() const {
  return (reaction[0] == Reaction::flee ? 4U : 0U) | (reaction[1] == Reaction::flee ? 2U : 0U) |
         (reaction[2] == Reaction::flee ? 1U : 0U);
}

MarginalTable marginals(const Chromosome& ch, const GameInstance& game) {
  const std::size_t n = game.vertex_count();
  MarginalTable m;
  m.patroller.assign(n, 0.0);
  for (auto& row : m.sensor) row.assign(n, 0.0);
  m.reached.assign(n, 0.0);
  m.unguarded.assign(n, 0.0);
  Coverage cov;
  for (const auto& ws : ch.strategies) {
    cov.compute(ws.strategy, game.graph);
    const double q = ws.prob;
    for (std::size_t v = 0; v < n; ++v) {
      switch (cov.state[v]) {
        case AllocationState::patroller: m.patroller[v] += q; break;
        case AllocationState::sensor_isolated: m.sensor[0][v] += q; break;
        case AllocationState::sensor_visited: m.sensor[1][v] += q; break;
        case AllocationState::sensor_adjacent: m.sensor[2][v] += q; break;
        case AllocationState::uncovered: (cov.reached[v] ? m.reached : m.unguarded)[v] += q; break;
      }
    }
  }
  return m;
}

SignalProbabilities signal_probabilities(const MarginalTable& m, const SignalingTable& signaling,
                                         double gamma, Vertex v) {
  SignalProbabilities p;
  for (SensorState s : kSensorStates) {
    const double x = m.sensor[static_cast<std::size_t>(s)][v];
    const double det = signaling.weak_if_detected(s, v);
    const double miss = signaling.weak_if_missed(s, v);
    p.weak += gamma * x * miss + (1.0 - gamma) * x * det;
    p.strong += gamma * x * (1.0 - miss) + (1.0 - gamma) * x * (1.0 - det);
  }
  return p;
}

SignalProbabilities signal_probabilities(const Chromosome& ch, const GameInstance& game, Vertex v) {
  return signal_probabilities(marginals(ch, game), ch.signaling, game.gamma, v);
}

Payoff AttackTable::evaluate(const AdversaryStrategy& adv) const {
  Payoff out;
  const auto& row = by_observation.at(adv.target);
  for (Signal obs : kSignals) {
    if (adv.react(obs) == Reaction::attack) {
      out.defender += row[static_cast<std::size_t>(obs)].defender;
      out.adversary += row[static_cast<std::size_t>(obs)].adversary;
    }
  }
  return out;
}

AttackTable attack_table(const MarginalTable& m, const SignalingTable& signaling,
                         const GameInstance& game) {
  const std::size_t n = game.vertex_count();
  const double gamma = game.gamma;
  const auto& pi = game.pi;
  AttackTable table;
  table.by_observation.resize(n);
  for (Vertex t = 0; t < n; ++t) {
    const auto& u = game.utilities[t];
    auto& row = table.by_observation[t];
    row.fill(Payoff{});

    // no sensor on the target: the adversary sees a noisy "none"
    const double caught = m.patroller[t] + m.reached[t];
    const double escaped = m.unguarded[t];
    for (Signal obs : kSignals) {
      const double w = pi(obs, Signal::none);
      auto& cell = row[static_cast<std::size_t>(obs)];
      cell.defender += w * (caught * u.def_caught + escaped * u.def_attacked);
      cell.adversary += w * (caught * u.adv_caught + escaped * u.adv_success);
    }

    for (SensorState s : kSensorStates) {
      const double x = m.sensor[static_cast<std::size_t>(s)][t];
      if (x == 0.0) continue;
      const double det_weak = signaling.weak_if_detected(s, t);
      const double miss_weak = signaling.weak_if_missed(s, t);
      // a detection summons a neighbouring patroller; a miss is only rescued
      // by a patroller already scheduled to visit
      const bool caught_if_detected = s != SensorState::isolated;
      const bool caught_if_missed = s == SensorState::visited;
      for (Signal obs : kSignals) {
        const double seen_weak = pi(obs, Signal::weak);
        const double seen_strong = pi(obs, Signal::strong);
        const double det = (1.0 - gamma) * x * (det_weak * seen_weak + (1.0 - det_weak) * seen_strong);
        const double miss = gamma * x * (miss_weak * seen_weak + (1.0 - miss_weak) * seen_strong);
        auto& cell = row[static_cast<std::size_t>(obs)];
        cell.defender += det * (caught_if_detected ? u.def_caught : u.def_attacked) +
                         miss * (caught_if_missed ? u.def_caught : u.def_attacked);
        cell.adversary += det * (caught_if_detected ? u.adv_caught : u.adv_success) +
                          miss * (caught_if_missed ? u.adv_caught : u.adv_success);
      }
    }
  }
  return table;
}

Payoff payoff_against(const Chromosome& ch, const GameInstance& game, const AdversaryStrategy& adv) {
  return attack_table(marginals(ch, game), ch.signaling, game).evaluate(adv);
}

namespace {

// Strong Stackelberg ordering with deterministic fallbacks; candidates are
// visited in (target, scheme) order so only strict improvements replace.
bool improves(const Payoff& candidate, const Payoff& best) {
  const double tol = kTieTolerance * std::max(1.0, std::abs(best.adversary));
  if (candidate.adversary > best.adversary + tol) return true;
  if (candidate.adversary < best.adversary - tol) return false;
  return candidate.defender > best.defender + kTieTolerance * std::max(1.0, std::abs(best.defender));
}

template <class PayoffOf>
EvalReport search_best_response(std::size_t n, PayoffOf&& payoff_of) {
  EvalReport report;
  bool have = false;
  Payoff best;
  for (Vertex t = 0; t < n; ++t) {
    for (unsigned s = 0; s < kReactionSchemes; ++s) {
      const auto adv = AdversaryStrategy::from_scheme(t, s);
      const Payoff p = payoff_of(adv);
      if (!have || improves(p, best)) {
        best = p;
        report.best_response = adv;
        have = true;
      }
    }
  }
  report.defender_payoff = best.defender;
  report.adversary_payoff = best.adversary;
  return report;
}

}  // namespace

EvalReport best_response(const AttackTable& table) {
  return search_best_response(table.by_observation.size(),
                              [&](const AdversaryStrategy& a) { return table.evaluate(a); });
}

EvalReport best_response(const Chromosome& ch, const GameInstance& game) {
  return best_response(attack_table(marginals(ch, game), ch.signaling, game));
}

double pure_strategy_utility(const PureStrategy& e, const SignalingTable& signaling,
                             const GameInstance& game) {
  Chromosome single;
  single.strategies.push_back({e, 1.0});
  single.signaling = signaling;
  return best_response(single, game).defender_payoff;
}

EvalReport evaluate(Chromosome& ch, const GameInstance& game) {
  EvalReport r = best_response(ch, game);
  ch.fitness = r.defender_payoff;
  ch.adversary_target = r.best_response.target;
  return r;
}

void evaluate_population(std::span<Chromosome> population, const GameInstance& game,
                         Execution exec) {
  const auto count = static_cast<std::ptrdiff_t>(population.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      if (!population[static_cast<std::size_t>(i)].fitness) {
        evaluate(population[static_cast<std::size_t>(i)], game);
      }
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      if (!population[static_cast<std::size_t>(i)].fitness) {
        evaluate(population[static_cast<std::size_t>(i)], game);
      }
    }
  }
}

std::string report_json(const EvalReport& report) {
  auto word = [](Reaction r) { return r == Reaction::attack ? "attack" : "flee"; };
  nlohmann::ordered_json doc;
  doc["defender_payoff"] = report.defender_payoff;
  doc["adversary_payoff"] = report.adversary_payoff;
  doc["target"] = report.best_response.target;
  doc["reaction"] = {{"n", word(report.best_response.reaction[0])},
                     {"s0", word(report.best_response.reaction[1])},
                     {"s1", word(report.best_response.reaction[2])}};
  return doc.dump(2) + "\n";
}

namespace reference {

Payoff payoff_against(const Chromosome& ch, const GameInstance& game, const AdversaryStrategy& adv) {
  const Vertex t = adv.target;
  const auto& u = game.utilities[t];
  const double gamma = game.gamma;

  // expected payoff when the true signal is `truth` and the attack, if it
  // goes ahead, ends with the adversary caught or not
  auto resolve = [&](Signal truth, bool caught) {
    Payoff p;
    for (Signal obs : kSignals) {
      if (adv.react(obs) == Reaction::flee) continue;
      const double w = game.pi(obs, truth);
      p.defender += w * (caught ? u.def_caught : u.def_attacked);
      p.adversary += w * (caught ? u.adv_caught : u.adv_success);
    }
    return p;
  };

  Payoff total;
  Coverage cov;
  for (const auto& ws : ch.strategies) {
    cov.compute(ws.strategy, game.graph);
    const AllocationState state = cov.state[t];
    Payoff part;
    if (state == AllocationState::patroller) {
      part = resolve(Signal::none, true);
    } else if (state == AllocationState::uncovered) {
      part = resolve(Signal::none, cov.reached[t] != 0);
    } else {
      const SensorState s = sensor_state(state);
      const double det_weak = ch.signaling.weak_if_detected(s, t);
      const double miss_weak = ch.signaling.weak_if_missed(s, t);
      const bool caught_det = s == SensorState::visited || s == SensorState::adjacent;
      const bool caught_miss = s == SensorState::visited;
      const std::array<std::pair<double, Payoff>, 4> branches{{
          {(1.0 - gamma) * det_weak, resolve(Signal::weak, caught_det)},
          {(1.0 - gamma) * (1.0 - det_weak), resolve(Signal::strong, caught_det)},
          {gamma * miss_weak, resolve(Signal::weak, caught_miss)},
          {gamma * (1.0 - miss_weak), resolve(Signal::strong, caught_miss)},
      }};
      for (const auto& [w, p] : branches) {
        part.defender += w * p.defender;
        part.adversary += w * p.adversary;
      }
    }
    total.defender += ws.prob * part.defender;
    total.adversary += ws.prob * part.adversary;
  }
  return total;
}

EvalReport best_response(const Chromosome& ch, const GameInstance& game) {
  return search_best_response(game.vertex_count(), [&](const AdversaryStrategy& a) {
    return reference::payoff_against(ch, game, a);
  });
}

}  // namespace reference

}  // namespace sgs
