#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "sgs/game.hpp"
#include "sgs/strategy.hpp"

namespace sgs {

enum class Reaction : std::uint8_t { attack = 0, flee = 1 };

inline constexpr unsigned kReactionSchemes = 8;

/// Adversary pure strategy: a target plus a reaction to each observed signal.
struct AdversaryStrategy {
  Vertex target = 0;
  std::array<Reaction, 3> reaction{Reaction::attack, Reaction::attack, Reaction::attack};

  /// Schemes are numbered lexicographically over (none, weak, strong) with
  /// attack before flee: 0 is always-attack, 7 is always-flee.
  static AdversaryStrategy from_scheme(Vertex target, unsigned scheme);
  [[nodiscard]] unsigned scheme() const;
  [[nodiscard]] Reaction react(Signal observed) const {
    return reaction[static_cast<std::size_t>(observed)];
  }

  friend bool operator==(const AdversaryStrategy&, const AdversaryStrategy&) = default;
};

struct Payoff {
  double defender = 0.0;
  double adversary = 0.0;
};

/// Marginal probabilities of each allocation state per vertex.
struct MarginalTable {
  std::vector<double> patroller;
  std::array<std::vector<double>, 3> sensor;  // indexed by SensorState
  std::vector<double> reached;    // uncovered, but a patroller arrives in the reaction stage
  std::vector<double> unguarded;  // uncovered and nobody arrives
};

MarginalTable marginals(const Chromosome& ch, const GameInstance& game);

struct SignalProbabilities {
  double weak = 0.0;
  double strong = 0.0;
};

SignalProbabilities signal_probabilities(const MarginalTable& m, const SignalingTable& signaling,
                                         double gamma, Vertex v);
SignalProbabilities signal_probabilities(const Chromosome& ch, const GameInstance& game, Vertex v);

/// For every target and observed signal, the expected payoff mass of the
/// outcomes in which the adversary observes that signal and attacks. Payoffs
/// are additive over observations because fleeing pays (0, 0), so any
/// reaction scheme is evaluated by summing the attacked columns.
struct AttackTable {
  std::vector<std::array<Payoff, 3>> by_observation;

  [[nodiscard]] Payoff evaluate(const AdversaryStrategy& adv) const;
};

AttackTable attack_table(const MarginalTable& m, const SignalingTable& signaling,
                         const GameInstance& game);

struct EvalReport {
  double defender_payoff = 0.0;
  double adversary_payoff = 0.0;
  AdversaryStrategy best_response;
};

Payoff payoff_against(const Chromosome& ch, const GameInstance& game, const AdversaryStrategy& adv);

/// Adversary best response over all targets and the 8 reaction schemes.
/// Ties on adversary payoff go to the defender, then to the lowest target,
/// then to the lowest scheme number.
EvalReport best_response(const Chromosome& ch, const GameInstance& game);
EvalReport best_response(const AttackTable& table);

/// Tolerance used when comparing adversary payoffs for ties.
inline constexpr double kTieTolerance = 1e-10;

/// Fitness of the singleton mixed strategy {(e, 1)} under `signaling`.
double pure_strategy_utility(const PureStrategy& e, const SignalingTable& signaling,
                             const GameInstance& game);

/// Evaluates and fills the chromosome's fitness/adversary-target cache.
EvalReport evaluate(Chromosome& ch, const GameInstance& game);

enum class Execution { serial, parallel };

/// Evaluates every chromosome whose cache is empty. The parallel path runs
/// one chromosome per OpenMP iteration; results are identical to serial.
void evaluate_population(std::span<Chromosome> population, const GameInstance& game,
                         Execution exec = Execution::parallel);

std::string report_json(const EvalReport& report);

// Per-pure-strategy evaluation, kept as the slow reference for the marginal
// kernel above.
namespace reference {
Payoff payoff_against(const Chromosome& ch, const GameInstance& game, const AdversaryStrategy& adv);
EvalReport best_response(const Chromosome& ch, const GameInstance& game);
}  // namespace reference

}  // namespace sgs
