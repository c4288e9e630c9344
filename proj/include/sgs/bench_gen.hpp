#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgs/game.hpp"
#include "sgs/rng.hpp"

namespace sgs::bench {

enum class Family { sparse, moderate, dense, locally_dense, erdos_renyi };

/// Accepts "locally-dense"/"locally_dense" and "erdos-renyi"/"erdos_renyi".
Family parse_family(std::string_view name);
std::string family_name(Family f);

/// Uniform sampling ranges for per-target payoffs. The defender's reward for
/// a catch is drawn below the adversary's reward for a successful attack.
struct UtilityRanges {
  double adv_success_lo = 50.0, adv_success_hi = 400.0;
  double adv_caught_lo = -400.0, adv_caught_hi = -50.0;
  double def_attacked_lo = -400.0, def_attacked_hi = -50.0;
  double def_caught_lo = 10.0, def_caught_hi = 100.0;
};

struct SuiteConfig {
  Family family = Family::sparse;
  std::optional<int> n;            // Watts-Strogatz / Erdos-Renyi size; all of 10..100 when empty
  std::optional<int> cliques;      // locally dense; all of 3..10 when empty
  std::optional<int> clique_size;  // locally dense; all of 3..10 when empty
  std::optional<int> rule;         // locally dense; all of 1..3 when empty
  int games_per_setting = 5;
  double ws_beta = 0.3;
  double er_p = 0.3;
  UtilityRanges utilities;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Ring lattice where every vertex links to mean_degree/2 neighbours per side,
/// then each lattice edge is rewired with probability beta to a random
/// non-duplicate, non-self endpoint. The edge count is always n*mean_degree/2.
Graph watts_strogatz(std::size_t n, std::size_t mean_degree, double beta, Rng& rng);

Graph erdos_renyi(std::size_t n, double p, Rng& rng);

/// `cliques` disjoint cliques of `clique_size` vertices (clique c owns ids
/// c*size .. c*size+size-1). Rule 1 rings the first vertex of each clique,
/// rule 2 rings every vertex with its counterparts, rule 3 joins the first
/// vertices of all cliques into a hub.
Graph locally_dense(int cliques, int clique_size, int rule);

/// Even mean degree used for a Watts-Strogatz family at size n.
std::size_t family_mean_degree(Family f, std::size_t n);

struct ResourceCounts {
  int patrollers = 1;
  int sensors = 0;
};

/// k = round(sqrt(n/2)) (at least 1), l = round(2n/3 - k) clamped to [0, n-k].
ResourceCounts resource_counts(std::size_t n);

GameInstance generate_game(Graph graph, std::string name, const UtilityRanges& ranges, Rng& rng);

struct GeneratedGame {
  std::string file;
  GameInstance game;
};

std::vector<GeneratedGame> generate_suite(const SuiteConfig& cfg);
std::string manifest_json(const SuiteConfig& cfg, std::span<const GeneratedGame> games);

/// Writes every game plus manifest.json into `dir` (created if needed).
std::vector<GeneratedGame> write_suite(const SuiteConfig& cfg, const std::filesystem::path& dir);

}  // namespace sgs::bench
