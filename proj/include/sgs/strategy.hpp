#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sgs/game.hpp"
#include "sgs/rng.hpp"

namespace sgs {

/// One defender allocation: where patrollers start, where sensors sit, and
/// where each patroller moves in the reaction stage. reallocation[i] pairs
/// with patrollers[i]; staying put is always legal.
struct PureStrategy {
  std::vector<Vertex> patrollers;
  std::vector<Vertex> sensors;
  std::vector<Vertex> reallocation;

  friend bool operator==(const PureStrategy&, const PureStrategy&) = default;
};

/// Allocation state of a sensor vertex. Indices match the row order
/// [no patroller nearby, patroller will visit, patroller nearby but not visiting].
enum class SensorState : std::uint8_t { isolated = 0, visited = 1, adjacent = 2 };
inline constexpr std::array<SensorState, 3> kSensorStates{SensorState::isolated, SensorState::visited,
                                                          SensorState::adjacent};

enum class AllocationState : std::uint8_t {
  patroller,
  sensor_isolated,
  sensor_visited,
  sensor_adjacent,
  uncovered
};

[[nodiscard]] constexpr bool is_sensor(AllocationState s) {
  return s == AllocationState::sensor_isolated || s == AllocationState::sensor_visited ||
         s == AllocationState::sensor_adjacent;
}

[[nodiscard]] constexpr SensorState sensor_state(AllocationState s) {
  switch (s) {
    case AllocationState::sensor_visited: return SensorState::visited;
    case AllocationState::sensor_adjacent: return SensorState::adjacent;
    default: return SensorState::isolated;
  }
}

/// Probability that the sensor at a vertex sends the weak signal, per sensor
/// state, when it detects the adversary (`detected`) and when it misses it
/// (`missed`). The strong signal has the complementary probability.
struct SignalingTable {
  std::array<std::vector<double>, 3> detected;
  std::array<std::vector<double>, 3> missed;

  static SignalingTable filled(std::size_t n, double detected_value, double missed_value);

  [[nodiscard]] std::size_t vertex_count() const { return detected[0].size(); }
  [[nodiscard]] double weak_if_detected(SensorState s, Vertex v) const {
    return detected[static_cast<std::size_t>(s)][v];
  }
  [[nodiscard]] double weak_if_missed(SensorState s, Vertex v) const {
    return missed[static_cast<std::size_t>(s)][v];
  }

  friend bool operator==(const SignalingTable&, const SignalingTable&) = default;
};

struct WeightedStrategy {
  PureStrategy strategy;
  double prob = 1.0;

  friend bool operator==(const WeightedStrategy&, const WeightedStrategy&) = default;
};

/// A defender mixed strategy together with its signaling scheme. `fitness` and
/// `adversary_target` cache the last evaluation and are cleared by any change.
struct Chromosome {
  std::vector<WeightedStrategy> strategies;
  SignalingTable signaling;
  std::optional<double> fitness;
  std::optional<Vertex> adversary_target;

  void invalidate() {
    fitness.reset();
    adversary_target.reset();
  }
  [[nodiscard]] double probability_mass() const;
  void normalize();
};

/// Where a patroller actually ends up: `to` if it is `from` or adjacent to it,
/// otherwise the patroller stays.
[[nodiscard]] inline Vertex effective_move(const Graph& g, Vertex from, Vertex to) {
  return (to == from || (to < g.vertex_count() && g.has_edge(from, to))) ? to : from;
}

AllocationState allocation_state(const PureStrategy& e, const GameInstance& game, Vertex v);

/// Per-vertex allocation states and reaction-stage arrivals for one pure
/// strategy, computed in O(k*deg + l). Tolerates infeasible strategies
/// (a patroller wins over a sensor on a shared vertex).
struct Coverage {
  std::vector<AllocationState> state;
  std::vector<std::uint8_t> reached;  // some patroller ends the reaction stage here

  void compute(const PureStrategy& e, const Graph& graph);
};

PureStrategy random_pure_strategy(const GameInstance& game, Rng& rng);
Chromosome random_chromosome(const GameInstance& game, Rng& rng);

/// Local optimization: reassigns duplicate allocations (first occurrence in
/// patrollers-then-sensors order is kept) to unoccupied vertices, then
/// replaces illegal reallocation moves by a random neighbor or stay.
PureStrategy repair(PureStrategy e, const GameInstance& game, Rng& rng);
void repair(Chromosome& ch, const GameInstance& game, Rng& rng);

/// Description of the first violated invariant, if any.
std::optional<std::string> feasibility_violation(const PureStrategy& e, const GameInstance& game);
std::optional<std::string> chromosome_violation(const Chromosome& ch, const GameInstance& game);

}  // namespace sgs
