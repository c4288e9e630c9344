#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sgs/eval.hpp"
#include "sgs/game.hpp"
#include "sgs/rng.hpp"
#include "sgs/strategy.hpp"

namespace sgs {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runtime switches that disable or replace one component of the solver.
struct Ablation {
  bool no_crossover = false;
  bool no_mutation = false;
  bool no_m1 = false;
  bool no_m2 = false;
  bool no_m3 = false;
  bool no_local_opt = false;
  bool no_refresh = false;
  bool no_crossover_removal = false;
  bool legacy_crossover = false;

  /// Throws ConfigError listing the valid names on an unknown switch.
  static Ablation parse(std::span<const std::string> names);
  [[nodiscard]] std::vector<std::string> names() const;
  static const std::vector<std::string>& valid_names();

  friend bool operator==(const Ablation&, const Ablation&) = default;
};

struct EvolveParams {
  int n_pop = 200;
  int n_gen = 2000;
  int n_ref = 300;
  double p_c = 0.5;
  double p_m = 0.8;
  double p_sp = 0.8;
  int m_limit = 10;
  int n_e = 2;
  Ablation ablation;
  std::uint64_t seed = 0;

  /// Throws ConfigError on the first out-of-range field.
  void validate() const;

  friend bool operator==(const EvolveParams&, const EvolveParams&) = default;
};

/// Missing fields keep their defaults; unknown fields are rejected.
EvolveParams params_from_json(std::string_view json_text);
std::string params_to_json(const EvolveParams& params);

struct GenerationRecord {
  int generation = 0;
  double best_fitness = 0.0;  // best ever seen, so never decreases
  double mean_fitness = 0.0;
  double mean_strategy_count = 0.0;
  std::int64_t wall_time_ms = 0;
  bool refreshed = false;
};

struct SolveResult {
  Chromosome best;
  double best_fitness = 0.0;
  std::vector<GenerationRecord> history;
  int generations_to_best = 0;
};

/// Convergence history as CSV. With `with_timing` false the wall-clock column
/// is written as 0 so that the file is reproducible byte for byte.
std::string history_csv(std::span<const GenerationRecord> history, bool with_timing = true);

inline constexpr double kImprovementTolerance = 1e-9;

// --- operators -------------------------------------------------------------

/// n_pop random single-strategy chromosomes, repaired and evaluated.
std::vector<Chromosome> init_population(const GameInstance& game, const EvolveParams& params,
                                        Rng& rng);

/// Child before pruning: the parents' strategies concatenated and reweighted
/// by 2^u(e) * q (u = min-max normalized pure-strategy utility over both
/// parents), or, when `legacy`, halved and merged on exact duplicates.
/// Signaling tables are averaged.
Chromosome merge_parents(const Chromosome& a, const Chromosome& b, const GameInstance& game,
                         bool legacy = false);

/// Deletes each entry with probability (1 - q)^2, keeps at least one, renormalizes.
void prune(Chromosome& ch, Rng& rng);

Chromosome crossover(const Chromosome& a, const Chromosome& b, const GameInstance& game,
                     const Ablation& ablation, Rng& rng);

/// Sets entry `index` to `rho` and rescales the others to 1 - rho.
/// Returns false (no change) for single-strategy chromosomes.
bool apply_probability_change(Chromosome& ch, std::size_t index, double rho);
bool mutate_probability(Chromosome& ch, Rng& rng);

/// Replaces one slot of one list of one pure strategy with a random vertex.
void mutate_allocation(Chromosome& ch, const GameInstance& game, Rng& rng, bool local_opt = true);

/// Complements one of the 6N signaling probabilities.
void mutate_signaling(Chromosome& ch, Rng& rng);

/// Puts the last best-response target into a random pure strategy that does
/// not cover it. Returns false when every pure strategy already covers it.
bool mutate_coverage(Chromosome& ch, const GameInstance& game, Rng& rng, bool local_opt = true);

enum class MutationKind : std::uint8_t { probability, allocation, signaling, coverage };

struct MutationOutcome {
  Chromosome result;
  int attempts = 0;
  bool improved = false;
  std::vector<MutationKind> tried;
};

/// Up to m_limit attempts, each on a fresh copy of `ch`; stops at the first
/// strictly better result, otherwise keeps the last attempt. The result is
/// evaluated.
MutationOutcome mutate(const Chromosome& ch, const GameInstance& game, const EvolveParams& params,
                       Rng& rng);

/// n_e elites (stable by pool order) then binary tournaments with replacement.
std::vector<Chromosome> select(std::span<const Chromosome> pool, const EvolveParams& params, Rng& rng);

/// Replaces floor(n/2) random members other than the best with fresh random
/// chromosomes. Returns the replaced indices.
std::vector<std::size_t> refresh(std::vector<Chromosome>& population, const GameInstance& game,
                                 Rng& rng);

using GenerationObserver = std::function<void(int generation, std::span<const Chromosome> population)>;

/// Runs the evolutionary loop. Every random decision is drawn from a stream
/// derived from (seed, generation, phase), so the result does not depend on
/// the number of OpenMP threads.
SolveResult run(const GameInstance& game, const EvolveParams& params,
                const GenerationObserver& observer = {});

}  // namespace sgs
