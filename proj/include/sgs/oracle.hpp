#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sgs/eval.hpp"
#include "sgs/game.hpp"
#include "sgs/rng.hpp"
#include "sgs/strategy.hpp"

// Monte-Carlo playouts of the game timeline. This module resolves outcomes on
// its own and must not call into the analytic evaluator's payoff code; it is
// the independent check on that code.

namespace sgs::oracle {

enum class Terminal : std::uint8_t { caught = 0, attack_successful = 1, attack_interrupted = 2 };

struct PlayoutOutcome {
  Terminal terminal = Terminal::attack_interrupted;
  double defender_payoff = 0.0;
  double adversary_payoff = 0.0;
};

/// Precomputes the pure-strategy sampling table for repeated playouts.
class Simulator {
 public:
  Simulator(const Chromosome& ch, const GameInstance& game);

  [[nodiscard]] Terminal play(const AdversaryStrategy& adv, Rng& rng) const;
  [[nodiscard]] PlayoutOutcome outcome(const AdversaryStrategy& adv, Terminal terminal) const;

 private:
  const Chromosome& ch_;
  const GameInstance& game_;
  std::vector<double> cumulative_;
};

PlayoutOutcome simulate_once(const Chromosome& ch, const GameInstance& game,
                             const AdversaryStrategy& adv, Rng& rng);

struct Estimate {
  double mean_def = 0.0;
  double mean_adv = 0.0;
  double stderr_def = 0.0;
  double stderr_adv = 0.0;
  std::uint64_t samples = 0;
  std::array<std::uint64_t, 3> terminal_counts{};  // indexed by Terminal
};

/// Sample means and standard errors over `samples` playouts. Playouts run in
/// fixed-size batches, each with its own stream derived from one draw of
/// `rng`, so the estimate does not depend on the thread count.
Estimate mc_estimate(const Chromosome& ch, const GameInstance& game, const AdversaryStrategy& adv,
                     std::uint64_t samples, Rng& rng);

struct ValidationReport {
  bool pass = false;
  double max_abs_z = 0.0;
  std::size_t comparisons = 0;
  std::uint64_t samples_per_comparison = 0;
};

using AnalyticPayoff =
    std::function<Payoff(const Chromosome&, const GameInstance&, const AdversaryStrategy&)>;

inline constexpr double kZThreshold = 4.0;

/// Compares Monte-Carlo estimates with `analytic` for every adversary pure
/// strategy (games up to 10 vertices) or for 32 random ones (larger games).
ValidationReport validate(const Chromosome& ch, const GameInstance& game, std::uint64_t samples,
                          Rng& rng, const AnalyticPayoff& analytic = sgs::payoff_against);

std::string report_json(const ValidationReport& report);

}  // namespace sgs::oracle
