#include "sgs/bench_gen.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "sgs/game_io.hpp"

namespace sgs::bench {

Family parse_family(std::string_view name) {
  if (name == "sparse") return Family::sparse;
  if (name == "moderate") return Family::moderate;
  if (name == "dense") return Family::dense;
  if (name == "locally-dense" || name == "locally_dense") return Family::locally_dense;
  if (name == "erdos-renyi" || name == "erdos_renyi") return Family::erdos_renyi;
  throw std::invalid_argument("unknown family '" + std::string(name) +
                              "' (valid: sparse, moderate, dense, locally-dense, erdos-renyi)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::sparse: return "sparse";
    case Family::moderate: return "moderate";
    case Family::dense: return "dense";
    case Family::locally_dense: return "locally-dense";
    case Family::erdos_renyi: return "erdos-renyi";
  }
  return "unknown";
}

void SuiteConfig::validate() const {
  if (games_per_setting < 1) throw std::invalid_argument("games_per_setting: must be >= 1");
  if (family == Family::locally_dense) {
    if (rule && (*rule < 1 || *rule > 3)) throw std::invalid_argument("rule: must be 1, 2 or 3");
    if (cliques && *cliques < 3) throw std::invalid_argument("cliques: must be >= 3");
    if (clique_size && *clique_size < 3) throw std::invalid_argument("clique_size: must be >= 3");
  } else if (n && *n < 3) {
    throw std::invalid_argument("n: must be >= 3");
  }
  if (!(ws_beta >= 0.0 && ws_beta <= 1.0)) throw std::invalid_argument("ws_beta: must lie in [0, 1]");
  if (!(er_p >= 0.0 && er_p <= 1.0)) throw std::invalid_argument("er_p: must lie in [0, 1]");
}

Graph watts_strogatz(std::size_t n, std::size_t mean_degree, double beta, Rng& rng) {
  if (mean_degree % 2 != 0 || mean_degree >= n) {
    throw std::invalid_argument("watts_strogatz: mean degree must be even and below n");
  }
  Graph g(n);
  const std::size_t half = mean_degree / 2;
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>((u + j) % n));
  }
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const auto a = static_cast<Vertex>(u);
      const auto b = static_cast<Vertex>((u + j) % n);
      if (!bernoulli(rng, beta)) continue;
      if (!g.has_edge(a, b) || g.degree(a) >= n - 1) continue;
      std::vector<Vertex> candidates;
      for (Vertex w = 0; w < n; ++w) {
        if (w != a && !g.has_edge(a, w)) candidates.push_back(w);
      }
      const Vertex w = candidates[uniform_index(rng, candidates.size())];
      g.remove_edge(a, b);
      g.add_edge(a, w);
    }
  }
  return g;
}

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (bernoulli(rng, p)) g.add_edge(u, v);
    }
  }
  return g;
}

Graph locally_dense(int cliques, int clique_size, int rule) {
  if (cliques < 3 || clique_size < 1 || rule < 1 || rule > 3) {
    throw std::invalid_argument("locally_dense: need cliques >= 3 and rule in {1,2,3}");
  }
  const auto c = static_cast<Vertex>(cliques);
  const auto s = static_cast<Vertex>(clique_size);
  Graph g(static_cast<std::size_t>(c) * s);
  auto id = [s](Vertex clique, Vertex local) { return clique * s + local; };
  for (Vertex k = 0; k < c; ++k) {
    for (Vertex a = 0; a < s; ++a) {
      for (Vertex b = a + 1; b < s; ++b) g.add_edge(id(k, a), id(k, b));
    }
  }
  switch (rule) {
    case 1:
      for (Vertex k = 0; k < c; ++k) g.add_edge(id(k, 0), id((k + 1) % c, 0));
      break;
    case 2:
      for (Vertex k = 0; k < c; ++k) {
        for (Vertex a = 0; a < s; ++a) g.add_edge(id(k, a), id((k + 1) % c, a));
      }
      break;
    default:
      for (Vertex k = 0; k < c; ++k) {
        for (Vertex m = k + 1; m < c; ++m) g.add_edge(id(k, 0), id(m, 0));
      }
      break;
  }
  return g;
}

std::size_t family_mean_degree(Family f, std::size_t n) {
  switch (f) {
    case Family::sparse: return 2;
    case Family::moderate: return (n / 2) - (n / 2) % 2;
    case Family::dense: return (n - 2) - (n - 2) % 2;
    default: throw std::invalid_argument("family_mean_degree: not a Watts-Strogatz family");
  }
}

ResourceCounts resource_counts(std::size_t n) {
  const double size = static_cast<double>(n);
  ResourceCounts rc;
  rc.patrollers = std::max(1, static_cast<int>(std::floor(std::sqrt(size / 2.0) + 0.5)));
  const int sensors = static_cast<int>(std::floor(2.0 * size / 3.0 - rc.patrollers + 0.5));
  rc.sensors = std::clamp(sensors, 0, std::max(0, static_cast<int>(n) - rc.patrollers));
  if (static_cast<std::size_t>(rc.patrollers + rc.sensors) > n) {
    throw std::invalid_argument("graph with " + std::to_string(n) + " vertices is too small");
  }
  return rc;
}

GameInstance generate_game(Graph graph, std::string name, const UtilityRanges& r, Rng& rng) {
  GameInstance game;
  game.name = std::move(name);
  const std::size_t n = graph.vertex_count();
  game.graph = std::move(graph);
  const auto rc = resource_counts(n);
  game.num_patrollers = rc.patrollers;
  game.num_sensors = rc.sensors;
  game.gamma = canonical_real(uniform01(rng));
  const double kappa = canonical_real(uniform01(rng));
  game.pi = uncertainty_matrix(kappa);
  for (auto& row : game.pi.p) {
    for (auto& x : row) x = canonical_real(x);
  }
  auto draw = [&](double lo, double hi) {
    return canonical_real(std::uniform_real_distribution<double>(lo, hi)(rng));
  };
  game.utilities.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    TargetUtility u;
    u.adv_success = draw(r.adv_success_lo, r.adv_success_hi);
    u.adv_caught = draw(r.adv_caught_lo, r.adv_caught_hi);
    u.def_attacked = draw(r.def_attacked_lo, r.def_attacked_hi);
    const double cap = std::min(r.def_caught_hi, u.adv_success);
    if (!(r.def_caught_lo < cap)) {
      throw std::invalid_argument("utility ranges leave no room for def_caught < adv_success");
    }
    u.def_caught = draw(r.def_caught_lo, cap);
    game.utilities.push_back(u);
  }
  game.validate();
  return game;
}

namespace {

std::vector<int> range_or(const std::optional<int>& v, int lo, int hi, int step = 1) {
  if (v) return {*v};
  std::vector<int> out;
  for (int x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

}  // namespace

std::vector<GeneratedGame> generate_suite(const SuiteConfig& cfg) {
  cfg.validate();
  std::vector<GeneratedGame> out;
  const auto per = static_cast<std::size_t>(cfg.games_per_setting);
  if (cfg.family == Family::locally_dense) {
    for (int c : range_or(cfg.cliques, 3, 10)) {
      for (int s : range_or(cfg.clique_size, 3, 10)) {
        for (int r : range_or(cfg.rule, 1, 3)) {
          for (std::size_t i = 0; i < per; ++i) {
            const std::string stem = i == 0 ? fmt::format("{:02}_{:02}_{}", c, s, r)
                                            : fmt::format("{:02}_{:02}_{}_{:02}", c, s, r, i);
            Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(c * 10000 + s * 10 + r), i);
            out.push_back({stem + ".json", generate_game(locally_dense(c, s, r), stem, cfg.utilities, rng)});
          }
        }
      }
    }
    return out;
  }
  const auto family_key = static_cast<std::uint64_t>(cfg.family) + 1;
  for (int n : range_or(cfg.n, 10, 100, 10)) {
    for (std::size_t i = 0; i < per; ++i) {
      const std::string stem = fmt::format("{}_{:03}_{:02}", family_name(cfg.family), n, i);
      Rng rng = derive_stream(cfg.seed, family_key * 100000 + static_cast<std::uint64_t>(n), i);
      const auto size = static_cast<std::size_t>(n);
      Graph g = cfg.family == Family::erdos_renyi
                    ? erdos_renyi(size, cfg.er_p, rng)
                    : watts_strogatz(size, family_mean_degree(cfg.family, size), cfg.ws_beta, rng);
      out.push_back({stem + ".json", generate_game(std::move(g), stem, cfg.utilities, rng)});
    }
  }
  return out;
}

std::string manifest_json(const SuiteConfig& cfg, std::span<const GeneratedGame> games) {
  nlohmann::ordered_json doc;
  doc["family"] = family_name(cfg.family);
  doc["seed"] = cfg.seed;
  auto list = nlohmann::ordered_json::array();
  for (const auto& g : games) {
    nlohmann::ordered_json e;
    e["file"] = g.file;
    e["n"] = g.game.vertex_count();
    e["k"] = g.game.num_patrollers;
    e["l"] = g.game.num_sensors;
    list.push_back(std::move(e));
  }
  doc["games"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::vector<GeneratedGame> write_suite(const SuiteConfig& cfg, const std::filesystem::path& dir) {
  auto games = generate_suite(cfg);
  std::filesystem::create_directories(dir);
  for (const auto& g : games) save_game_file(g.game, dir / g.file);
  write_text_file(dir / "manifest.json", manifest_json(cfg, games));
  return games;
}

}  // namespace sgs::bench
