#include "sgs/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sgs {

SignalingTable SignalingTable::filled(std::size_t n, double detected_value, double missed_value) {
  SignalingTable t;
  for (auto& row : t.detected) row.assign(n, detected_value);
  for (auto& row : t.missed) row.assign(n, missed_value);
  return t;
}

double Chromosome::probability_mass() const {
  double sum = 0.0;
  for (const auto& ws : strategies) sum += ws.prob;
  return sum;
}

void Chromosome::normalize() {
  const double total = probability_mass();
  if (!(total > 0.0)) throw std::logic_error("cannot normalize a chromosome with zero mass");
  for (auto& ws : strategies) ws.prob /= total;
}

void Coverage::compute(const PureStrategy& e, const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  state.assign(n, AllocationState::uncovered);
  reached.assign(n, 0);
  for (Vertex p : e.patrollers) state[p] = AllocationState::patroller;
  for (std::size_t i = 0; i < e.patrollers.size(); ++i) {
    reached[effective_move(graph, e.patrollers[i], e.reallocation[i])] = 1;
  }
  for (Vertex s : e.sensors) {
    if (state[s] == AllocationState::patroller) continue;
    if (reached[s]) {
      state[s] = AllocationState::sensor_visited;
      continue;
    }
    const bool near = std::any_of(e.patrollers.begin(), e.patrollers.end(),
                                  [&](Vertex p) { return graph.has_edge(p, s); });
    state[s] = near ? AllocationState::sensor_adjacent : AllocationState::sensor_isolated;
  }
}

AllocationState allocation_state(const PureStrategy& e, const GameInstance& game, Vertex v) {
  const auto& g = game.graph;
  auto contains = [](const std::vector<Vertex>& list, Vertex x) {
    return std::find(list.begin(), list.end(), x) != list.end();
  };
  if (contains(e.patrollers, v)) return AllocationState::patroller;
  if (!contains(e.sensors, v)) return AllocationState::uncovered;
  for (std::size_t i = 0; i < e.patrollers.size(); ++i) {
    if (effective_move(g, e.patrollers[i], e.reallocation[i]) == v) {
      return AllocationState::sensor_visited;
    }
  }
  for (Vertex p : e.patrollers) {
    if (g.has_edge(p, v)) return AllocationState::sensor_adjacent;
  }
  return AllocationState::sensor_isolated;
}

namespace {

Vertex random_move(const Graph& g, Vertex from, Rng& rng) {
  const auto nb = g.neighbors(from);
  const std::size_t pick = uniform_index(rng, nb.size() + 1);
  return pick == nb.size() ? from : nb[pick];
}

}  // namespace

PureStrategy random_pure_strategy(const GameInstance& game, Rng& rng) {
  const std::size_t n = game.vertex_count();
  const auto k = static_cast<std::size_t>(game.num_patrollers);
  const auto l = static_cast<std::size_t>(game.num_sensors);
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  // partial Fisher-Yates: the first k+l slots become a uniform random subset
  for (std::size_t i = 0; i < k + l; ++i) {
    std::swap(pool[i], pool[i + uniform_index(rng, n - i)]);
  }
  PureStrategy e;
  e.patrollers.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  e.sensors.assign(pool.begin() + static_cast<std::ptrdiff_t>(k),
                   pool.begin() + static_cast<std::ptrdiff_t>(k + l));
  e.reallocation.reserve(k);
  for (Vertex p : e.patrollers) e.reallocation.push_back(random_move(game.graph, p, rng));
  return e;
}

Chromosome random_chromosome(const GameInstance& game, Rng& rng) {
  Chromosome ch;
  ch.strategies.push_back({random_pure_strategy(game, rng), 1.0});
  const std::size_t n = game.vertex_count();
  for (auto* table : {&ch.signaling.detected, &ch.signaling.missed}) {
    for (auto& row : *table) {
      row.resize(n);
      for (auto& x : row) x = uniform01(rng);
    }
  }
  return ch;
}

PureStrategy repair(PureStrategy e, const GameInstance& game, Rng& rng) {
  const auto& g = game.graph;
  const std::size_t n = game.vertex_count();
  if (e.reallocation.size() != e.patrollers.size()) {
    throw std::invalid_argument("repair: reallocation and patroller lists differ in length");
  }

  // spare resources: keep the first occurrence, move later duplicates
  std::vector<std::uint8_t> occupied(n, 0);
  std::vector<Vertex*> spare;
  auto scan = [&](std::vector<Vertex>& list) {
    for (auto& v : list) {
      if (v < n && !occupied[v]) {
        occupied[v] = 1;
      } else {
        spare.push_back(&v);
      }
    }
  };
  scan(e.patrollers);
  scan(e.sensors);
  if (!spare.empty()) {
    std::vector<Vertex> free;
    for (Vertex v = 0; v < n; ++v) {
      if (!occupied[v]) free.push_back(v);
    }
    if (free.size() < spare.size()) {
      throw std::invalid_argument("repair: more resources than vertices");
    }
    for (Vertex* slot : spare) {
      const std::size_t pick = uniform_index(rng, free.size());
      *slot = free[pick];
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }

  // reaction-stage moves must follow an edge (or stay)
  for (std::size_t i = 0; i < e.patrollers.size(); ++i) {
    const Vertex p = e.patrollers[i];
    const Vertex r = e.reallocation[i];
    if (r == p || (r < n && g.has_edge(p, r))) continue;
    e.reallocation[i] = random_move(g, p, rng);
  }
  return e;
}

void repair(Chromosome& ch, const GameInstance& game, Rng& rng) {
  bool changed = false;
  for (auto& ws : ch.strategies) {
    PureStrategy fixed = repair(ws.strategy, game, rng);
    if (!(fixed == ws.strategy)) {
      ws.strategy = std::move(fixed);
      changed = true;
    }
  }
  if (changed) ch.invalidate();
}

std::optional<std::string> feasibility_violation(const PureStrategy& e, const GameInstance& game) {
  const std::size_t n = game.vertex_count();
  const auto k = static_cast<std::size_t>(game.num_patrollers);
  const auto l = static_cast<std::size_t>(game.num_sensors);
  if (e.patrollers.size() != k) return "patrollers: expected " + std::to_string(k) + " entries";
  if (e.sensors.size() != l) return "sensors: expected " + std::to_string(l) + " entries";
  if (e.reallocation.size() != k) return "reallocation: expected " + std::to_string(k) + " entries";
  std::vector<std::uint8_t> used(n, 0);
  for (const auto* list : {&e.patrollers, &e.sensors}) {
    for (Vertex v : *list) {
      if (v >= n) return "allocation vertex " + std::to_string(v) + " out of range";
      if (used[v]) return "vertex " + std::to_string(v) + " holds more than one resource";
      used[v] = 1;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex p = e.patrollers[i];
    const Vertex r = e.reallocation[i];
    if (r >= n) return "reallocation[" + std::to_string(i) + "] out of range";
    if (r != p && !game.graph.has_edge(p, r)) {
      return "reallocation[" + std::to_string(i) + "]: no edge " + std::to_string(p) + "-" +
             std::to_string(r);
    }
  }
  return std::nullopt;
}

std::optional<std::string> chromosome_violation(const Chromosome& ch, const GameInstance& game) {
  if (ch.strategies.empty()) return "chromosome has no pure strategies";
  double sum = 0.0;
  for (std::size_t i = 0; i < ch.strategies.size(); ++i) {
    const auto& ws = ch.strategies[i];
    if (!(ws.prob > 0.0 && ws.prob <= 1.0 + 1e-12)) {
      return "strategies[" + std::to_string(i) + "].prob outside (0, 1]";
    }
    sum += ws.prob;
    if (auto why = feasibility_violation(ws.strategy, game)) {
      return "strategies[" + std::to_string(i) + "]: " + *why;
    }
  }
  if (std::abs(sum - 1.0) > 1e-9) return "probabilities sum to " + std::to_string(sum);
  const std::size_t n = game.vertex_count();
  for (const auto* table : {&ch.signaling.detected, &ch.signaling.missed}) {
    for (const auto& row : *table) {
      if (row.size() != n) return "signaling table has wrong width";
      for (double x : row) {
        if (!(x >= 0.0 && x <= 1.0)) return "signaling entry outside [0, 1]";
      }
    }
  }
  return std::nullopt;
}

}  // namespace sgs
