#pragma once

#include <string>
#include <vector>

#include "sgs/bench_gen.hpp"
#include "sgs/game.hpp"
#include "sgs/rng.hpp"
#include "sgs/strategy.hpp"

namespace fixtures {

// Two vertices joined by an edge, one patroller, one sensor, perfect
// detection and observation, payoffs of magnitude 1.
inline sgs::GameInstance k2_game() {
  sgs::GameInstance g;
  g.name = "k2";
  g.graph = sgs::Graph(2);
  g.graph.add_edge(0, 1);
  g.utilities.assign(2, sgs::TargetUtility{1.0, -1.0, 1.0, -1.0});
  g.num_patrollers = 1;
  g.num_sensors = 1;
  g.gamma = 0.0;
  g.pi = sgs::uncertainty_matrix(0.0);
  return g;
}

// Patroller on 0 moving to 1, sensor on 1; detection always sends the strong
// signal, a miss always sends the weak one.
inline sgs::Chromosome k2_chromosome() {
  sgs::Chromosome ch;
  ch.strategies.push_back({sgs::PureStrategy{{0}, {1}, {1}}, 1.0});
  ch.signaling = sgs::SignalingTable::filled(2, 0.0, 1.0);
  return ch;
}

inline sgs::Graph path_graph(std::size_t n) {
  sgs::Graph g(n);
  for (sgs::Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

// Small game with an arbitrary column-stochastic observation matrix, so the
// tests do not only see the one-parameter family.
inline sgs::GameInstance random_small_game(std::size_t n, sgs::Rng& rng) {
  sgs::GameInstance g;
  g.name = "random_" + std::to_string(n);
  g.graph = sgs::bench::erdos_renyi(n, 0.4, rng);
  g.num_patrollers = 1 + static_cast<int>(sgs::uniform_index(rng, std::max<std::size_t>(1, n / 3)));
  g.num_sensors = static_cast<int>(sgs::uniform_index(rng, n - static_cast<std::size_t>(g.num_patrollers) + 1));
  g.gamma = sgs::uniform01(rng);
  for (std::size_t col = 0; col < 3; ++col) {
    double a = sgs::uniform01(rng), b = sgs::uniform01(rng), c = sgs::uniform01(rng);
    const double s = a + b + c;
    g.pi.p[0][col] = a / s;
    g.pi.p[1][col] = b / s;
    g.pi.p[2][col] = 1.0 - a / s - b / s;
  }
  for (std::size_t v = 0; v < n; ++v) {
    const double adv_success = 1.0 + 9.0 * sgs::uniform01(rng);
    g.utilities.push_back({0.5 + (adv_success - 0.5) * sgs::uniform01(rng), -1.0 - 9.0 * sgs::uniform01(rng),
                           adv_success, -1.0 - 9.0 * sgs::uniform01(rng)});
  }
  return g;
}

// Feasible mixed strategy with `count` random pure strategies (duplicates
// allowed) and random weights.
inline sgs::Chromosome random_mixed(const sgs::GameInstance& game, std::size_t count, sgs::Rng& rng) {
  sgs::Chromosome ch = sgs::random_chromosome(game, rng);
  ch.strategies.front().prob = 0.05 + sgs::uniform01(rng);
  for (std::size_t i = 1; i < count; ++i) {
    ch.strategies.push_back({sgs::random_pure_strategy(game, rng), 0.05 + sgs::uniform01(rng)});
  }
  ch.normalize();
  return ch;
}

}  // namespace fixtures
