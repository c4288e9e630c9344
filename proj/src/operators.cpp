#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sgs/evolve.hpp"

namespace sgs {

namespace {

std::vector<std::uint64_t> draw_seeds(Rng& rng, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (auto& s : seeds) s = rng();
  return seeds;
}

Chromosome fresh_chromosome(const GameInstance& game, std::uint64_t seed) {
  Rng rng(seed);
  Chromosome ch = random_chromosome(game, rng);
  repair(ch, game, rng);
  evaluate(ch, game);
  return ch;
}

}  // namespace

std::vector<Chromosome> init_population(const GameInstance& game, const EvolveParams& params,
                                        Rng& rng) {
  const auto seeds = draw_seeds(rng, static_cast<std::size_t>(params.n_pop));
  std::vector<Chromosome> population(seeds.size());
  const auto count = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    population[static_cast<std::size_t>(i)] = fresh_chromosome(game, seeds[static_cast<std::size_t>(i)]);
  }
  return population;
}

Chromosome merge_parents(const Chromosome& a, const Chromosome& b, const GameInstance& game,
                         bool legacy) {
  Chromosome child;
  child.signaling = a.signaling;
  for (std::size_t table = 0; table < 2; ++table) {
    auto& dst = table == 0 ? child.signaling.detected : child.signaling.missed;
    const auto& other = table == 0 ? b.signaling.detected : b.signaling.missed;
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t v = 0; v < dst[s].size(); ++v) dst[s][v] = 0.5 * (dst[s][v] + other[s][v]);
    }
  }

  if (legacy) {
    for (const auto& ws : a.strategies) child.strategies.push_back({ws.strategy, ws.prob / 2.0});
    for (const auto& ws : b.strategies) {
      auto same = std::find_if(child.strategies.begin(), child.strategies.end(),
                               [&](const WeightedStrategy& c) { return c.strategy == ws.strategy; });
      if (same != child.strategies.end()) {
        same->prob += ws.prob / 2.0;
      } else {
        child.strategies.push_back({ws.strategy, ws.prob / 2.0});
      }
    }
    child.normalize();
    return child;
  }

  std::vector<double> utility;
  utility.reserve(a.strategies.size() + b.strategies.size());
  for (const auto* parent : {&a, &b}) {
    for (const auto& ws : parent->strategies) {
      utility.push_back(pure_strategy_utility(ws.strategy, parent->signaling, game));
      child.strategies.push_back(ws);
    }
  }
  const auto [lo, hi] = std::minmax_element(utility.begin(), utility.end());
  const double low = *lo;
  const double span = *hi - *lo;
  const bool flat = span <= 1e-12 * std::max(1.0, std::abs(*hi));
  for (std::size_t i = 0; i < child.strategies.size(); ++i) {
    const double scaled = flat ? 0.0 : 2.0 * (utility[i] - low) / span - 1.0;
    child.strategies[i].prob *= std::exp2(scaled);
  }
  child.normalize();
  return child;
}

void prune(Chromosome& ch, Rng& rng) {
  std::vector<WeightedStrategy> kept;
  for (const auto& ws : ch.strategies) {
    const double drop = (1.0 - ws.prob) * (1.0 - ws.prob);
    if (!(uniform01(rng) < drop)) kept.push_back(ws);
  }
  if (kept.empty()) {
    const auto best = std::max_element(ch.strategies.begin(), ch.strategies.end(),
                                       [](const auto& x, const auto& y) { return x.prob < y.prob; });
    kept.push_back(*best);
  }
  ch.strategies = std::move(kept);
  ch.normalize();
  ch.invalidate();
}

Chromosome crossover(const Chromosome& a, const Chromosome& b, const GameInstance& game,
                     const Ablation& ablation, Rng& rng) {
  Chromosome child = merge_parents(a, b, game, ablation.legacy_crossover);
  if (!ablation.no_crossover_removal) prune(child, rng);
  return child;
}

bool apply_probability_change(Chromosome& ch, std::size_t index, double rho) {
  if (ch.strategies.size() < 2) return false;
  if (index >= ch.strategies.size()) throw std::out_of_range("probability change index");
  double others = 0.0;
  for (std::size_t i = 0; i < ch.strategies.size(); ++i) {
    if (i != index) others += ch.strategies[i].prob;
  }
  const double scale = (1.0 - rho) / others;
  for (std::size_t i = 0; i < ch.strategies.size(); ++i) {
    ch.strategies[i].prob = i == index ? rho : ch.strategies[i].prob * scale;
  }
  if (rho <= 0.0) ch.strategies.erase(ch.strategies.begin() + static_cast<std::ptrdiff_t>(index));
  ch.invalidate();
  return true;
}

bool mutate_probability(Chromosome& ch, Rng& rng) {
  if (ch.strategies.size() < 2) return false;
  const std::size_t index = uniform_index(rng, ch.strategies.size());
  return apply_probability_change(ch, index, uniform01(rng));
}

void mutate_allocation(Chromosome& ch, const GameInstance& game, Rng& rng, bool local_opt) {
  auto& e = ch.strategies[uniform_index(rng, ch.strategies.size())].strategy;
  std::vector<std::vector<Vertex>*> lists{&e.patrollers};
  if (!e.sensors.empty()) lists.push_back(&e.sensors);
  lists.push_back(&e.reallocation);
  auto& list = *lists[uniform_index(rng, lists.size())];
  const std::size_t slot = uniform_index(rng, list.size());
  if (&list == &e.reallocation) {
    const Vertex from = e.patrollers[slot];
    const auto nb = game.graph.neighbors(from);
    const std::size_t pick = uniform_index(rng, nb.size() + 1);
    list[slot] = pick == nb.size() ? from : nb[pick];
  } else {
    list[slot] = static_cast<Vertex>(uniform_index(rng, game.vertex_count()));
  }
  if (local_opt) e = repair(std::move(e), game, rng);
  ch.invalidate();
}

void mutate_signaling(Chromosome& ch, Rng& rng) {
  const std::size_t n = ch.signaling.vertex_count();
  const std::size_t idx = uniform_index(rng, 6 * n);
  auto& table = idx < 3 * n ? ch.signaling.detected : ch.signaling.missed;
  double& x = table[(idx / n) % 3][idx % n];
  x = 1.0 - x;
  ch.invalidate();
}

bool mutate_coverage(Chromosome& ch, const GameInstance& game, Rng& rng, bool local_opt) {
  if (!ch.adversary_target) throw std::logic_error("coverage mutation needs an evaluated chromosome");
  const Vertex target = *ch.adversary_target;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < ch.strategies.size(); ++i) {
    const auto& e = ch.strategies[i].strategy;
    const bool covered =
        std::find(e.patrollers.begin(), e.patrollers.end(), target) != e.patrollers.end() ||
        std::find(e.sensors.begin(), e.sensors.end(), target) != e.sensors.end();
    if (!covered) open.push_back(i);
  }
  if (open.empty()) return false;
  auto& e = ch.strategies[open[uniform_index(rng, open.size())]].strategy;
  const std::size_t slot = uniform_index(rng, e.patrollers.size() + e.sensors.size());
  if (slot < e.patrollers.size()) {
    e.patrollers[slot] = target;
  } else {
    e.sensors[slot - e.patrollers.size()] = target;
  }
  if (local_opt) e = repair(std::move(e), game, rng);
  ch.invalidate();
  return true;
}

MutationOutcome mutate(const Chromosome& ch, const GameInstance& game, const EvolveParams& params,
                       Rng& rng) {
  Chromosome base = ch;
  if (!base.fitness) evaluate(base, game);

  enum { kM1, kM2, kM3 };
  std::vector<int> kinds;
  if (!params.ablation.no_mutation) {
    if (!params.ablation.no_m1) kinds.push_back(kM1);
    if (!params.ablation.no_m2) kinds.push_back(kM2);
    if (!params.ablation.no_m3) kinds.push_back(kM3);
  }
  MutationOutcome out;
  if (kinds.empty()) {
    out.result = std::move(base);
    return out;
  }

  const bool local_opt = !params.ablation.no_local_opt;
  for (int attempt = 1; attempt <= params.m_limit; ++attempt) {
    Chromosome trial = base;
    switch (kinds[uniform_index(rng, kinds.size())]) {
      case kM1:
        out.tried.push_back(MutationKind::probability);
        mutate_probability(trial, rng);
        break;
      case kM2:
        if (bernoulli(rng, 0.5)) {
          out.tried.push_back(MutationKind::allocation);
          mutate_allocation(trial, game, rng, local_opt);
        } else {
          out.tried.push_back(MutationKind::signaling);
          mutate_signaling(trial, rng);
        }
        break;
      default:
        out.tried.push_back(MutationKind::coverage);
        mutate_coverage(trial, game, rng, local_opt);
        break;
    }
    if (!trial.fitness) evaluate(trial, game);
    out.attempts = attempt;
    out.result = std::move(trial);
    if (*out.result.fitness > *base.fitness + kImprovementTolerance) {
      out.improved = true;
      break;
    }
  }
  return out;
}

std::vector<Chromosome> select(std::span<const Chromosome> pool, const EvolveParams& params, Rng& rng) {
  const auto n_pop = static_cast<std::size_t>(params.n_pop);
  if (pool.size() < n_pop) throw std::invalid_argument("selection pool smaller than n_pop");
  for (const auto& ch : pool) {
    if (!ch.fitness) throw std::invalid_argument("selection pool contains an unevaluated chromosome");
  }
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return *pool[x].fitness > *pool[y].fitness; });

  std::vector<Chromosome> next;
  next.reserve(n_pop);
  const auto elites = std::min(n_pop, static_cast<std::size_t>(params.n_e));
  for (std::size_t i = 0; i < elites; ++i) next.push_back(pool[order[i]]);
  while (next.size() < n_pop) {
    const std::size_t x = uniform_index(rng, pool.size());
    const std::size_t y = uniform_index(rng, pool.size());
    const bool x_better = *pool[x].fitness >= *pool[y].fitness;
    const std::size_t better = x_better ? x : y;
    const std::size_t worse = x_better ? y : x;
    next.push_back(pool[bernoulli(rng, params.p_sp) ? better : worse]);
  }
  return next;
}

std::vector<std::size_t> refresh(std::vector<Chromosome>& population, const GameInstance& game,
                                 Rng& rng) {
  if (population.empty()) return {};
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (population[i].fitness.value_or(-INFINITY) > population[best].fitness.value_or(-INFINITY)) {
      best = i;
    }
  }
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (i != best) others.push_back(i);
  }
  const std::size_t count = std::min(population.size() / 2, others.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(others[i], others[i + uniform_index(rng, others.size() - i)]);
  }
  others.resize(count);
  const auto seeds = draw_seeds(rng, count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    population[others[static_cast<std::size_t>(i)]] =
        fresh_chromosome(game, seeds[static_cast<std::size_t>(i)]);
  }
  return others;
}

}  // namespace sgs
