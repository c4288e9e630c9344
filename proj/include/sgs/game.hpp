#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sgs/graph.hpp"

namespace sgs {

/// Signaling state of a vertex as it is, or as the adversary perceives it.
/// `none` means no sensor is present; `weak`/`strong` are the two sensor signals.
enum class Signal : std::uint8_t { none = 0, weak = 1, strong = 2 };
inline constexpr std::array<Signal, 3> kSignals{Signal::none, Signal::weak, Signal::strong};

/// Payoffs for an attack on one target. Fleeing always yields (0, 0).
struct TargetUtility {
  double def_caught = 0.0;    // > 0
  double def_attacked = 0.0;  // < 0
  double adv_success = 0.0;   // > 0
  double adv_caught = 0.0;    // < 0

  friend bool operator==(const TargetUtility&, const TargetUtility&) = default;
};

/// Column-stochastic matrix of P[observed | true] over {none, weak, strong}.
struct UncertaintyMatrix {
  std::array<std::array<double, 3>, 3> p{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};  // p[observed][true]

  [[nodiscard]] double operator()(Signal observed, Signal truth) const {
    return p[static_cast<std::size_t>(observed)][static_cast<std::size_t>(truth)];
  }

  friend bool operator==(const UncertaintyMatrix&, const UncertaintyMatrix&) = default;
};

/// The restricted one-parameter family used by the benchmark generator.
/// Throws std::domain_error for kappa outside [0, 1].
UncertaintyMatrix uncertainty_matrix(double kappa);

/// Raised when a game or strategy violates a structural invariant. The message
/// names the offending field.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameInstance {
  std::string name;
  Graph graph;
  std::vector<TargetUtility> utilities;
  int num_patrollers = 1;
  int num_sensors = 0;
  double gamma = 0.0;  // probability a sensor misses an adversary
  UncertaintyMatrix pi;

  [[nodiscard]] std::size_t vertex_count() const { return graph.vertex_count(); }

  /// Throws ValidationError on the first violated invariant.
  void validate() const;

  friend bool operator==(const GameInstance&, const GameInstance&) = default;
};

/// Neighbors of v (never contains v itself).
inline std::span<const Vertex> neighbors(const Graph& graph, Vertex v) { return graph.neighbors(v); }

}  // namespace sgs
