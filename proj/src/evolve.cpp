#include "sgs/evolve.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json.hpp"

namespace sgs {

namespace {

struct SwitchField {
  const char* name;
  bool Ablation::*flag;
};

constexpr SwitchField kSwitches[] = {
    {"no_crossover", &Ablation::no_crossover},
    {"no_mutation", &Ablation::no_mutation},
    {"no_m1", &Ablation::no_m1},
    {"no_m2", &Ablation::no_m2},
    {"no_m3", &Ablation::no_m3},
    {"no_local_opt", &Ablation::no_local_opt},
    {"no_refresh", &Ablation::no_refresh},
    {"no_crossover_removal", &Ablation::no_crossover_removal},
    {"legacy_crossover", &Ablation::legacy_crossover},
};

// phases of one generation, each with its own random stream
enum Phase : std::uint64_t { kInit = 1, kPairing, kCrossover, kMutation, kSelection, kRefresh };

}  // namespace

const std::vector<std::string>& Ablation::valid_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSwitches) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

Ablation Ablation::parse(std::span<const std::string> names) {
  Ablation a;
  for (const auto& name : names) {
    const auto* hit = std::find_if(std::begin(kSwitches), std::end(kSwitches),
                                   [&](const SwitchField& s) { return name == s.name; });
    if (hit == std::end(kSwitches)) {
      std::string valid;
      for (const auto& s : kSwitches) valid += std::string(valid.empty() ? "" : ", ") + s.name;
      throw ConfigError("unknown ablation switch '" + name + "' (valid: " + valid + ")");
    }
    a.*(hit->flag) = true;
  }
  return a;
}

std::vector<std::string> Ablation::names() const {
  std::vector<std::string> out;
  for (const auto& s : kSwitches) {
    if (this->*(s.flag)) out.emplace_back(s.name);
  }
  return out;
}

void EvolveParams::validate() const {
  if (n_pop < 2) throw ConfigError("n_pop: must be >= 2");
  if (n_gen < 0) throw ConfigError("n_gen: must be >= 0");
  if (n_ref < 1) throw ConfigError("n_ref: must be >= 1");
  if (!(p_c >= 0.0 && p_c <= 1.0)) throw ConfigError("p_c: must lie in [0, 1]");
  if (!(p_m >= 0.0 && p_m <= 1.0)) throw ConfigError("p_m: must lie in [0, 1]");
  if (!(p_sp >= 0.5 && p_sp <= 1.0)) throw ConfigError("p_sp: must lie in [0.5, 1]");
  if (m_limit < 1) throw ConfigError("m_limit: must be >= 1");
  if (n_e < 0 || n_e >= n_pop) throw ConfigError("n_e: must satisfy 0 <= n_e < n_pop");
}

EvolveParams params_from_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("params: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("params: top-level value must be an object");
  EvolveParams p;
  for (const auto& [key, value] : doc.items()) {
    auto as_int = [&](int& dst) {
      if (!value.is_number_integer()) throw ConfigError(key + ": expected integer");
      dst = value.get<int>();
    };
    auto as_real = [&](double& dst) {
      if (!value.is_number()) throw ConfigError(key + ": expected number");
      dst = value.get<double>();
    };
    if (key == "n_pop") as_int(p.n_pop);
    else if (key == "n_gen") as_int(p.n_gen);
    else if (key == "n_ref") as_int(p.n_ref);
    else if (key == "m_limit") as_int(p.m_limit);
    else if (key == "n_e") as_int(p.n_e);
    else if (key == "p_c") as_real(p.p_c);
    else if (key == "p_m") as_real(p.p_m);
    else if (key == "p_sp") as_real(p.p_sp);
    else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("seed: expected non-negative integer");
      p.seed = value.get<std::uint64_t>();
    } else if (key == "ablation") {
      if (!value.is_array()) throw ConfigError("ablation: expected array of strings");
      std::vector<std::string> names;
      for (const auto& x : value) {
        if (!x.is_string()) throw ConfigError("ablation: expected array of strings");
        names.push_back(x.get<std::string>());
      }
      p.ablation = Ablation::parse(names);
    } else {
      throw ConfigError("params: unknown field '" + key + "'");
    }
  }
  p.validate();
  return p;
}

std::string params_to_json(const EvolveParams& p) {
  nlohmann::ordered_json doc;
  doc["n_pop"] = p.n_pop;
  doc["n_gen"] = p.n_gen;
  doc["n_ref"] = p.n_ref;
  doc["p_c"] = p.p_c;
  doc["p_m"] = p.p_m;
  doc["p_sp"] = p.p_sp;
  doc["m_limit"] = p.m_limit;
  doc["n_e"] = p.n_e;
  doc["ablation"] = p.ablation.names();
  doc["seed"] = p.seed;
  return doc.dump(2) + "\n";
}

std::string history_csv(std::span<const GenerationRecord> history, bool with_timing) {
  std::string out = "generation,best_fitness,mean_fitness,mean_strategy_count,wall_time_ms,refreshed\n";
  for (const auto& r : history) {
    out += fmt::format("{},{},{},{},{},{}\n", r.generation, r.best_fitness, r.mean_fitness,
                       r.mean_strategy_count, with_timing ? r.wall_time_ms : 0, r.refreshed ? 1 : 0);
  }
  return out;
}

SolveResult run(const GameInstance& game, const EvolveParams& params, const GenerationObserver& observer) {
  params.validate();
  game.validate();
  const auto started = std::chrono::steady_clock::now();
  const auto& ablation = params.ablation;
  const bool local_opt = !ablation.no_local_opt;

  Rng init_rng = derive_stream(params.seed, 0, kInit);
  std::vector<Chromosome> population = init_population(game, params, init_rng);
  if (observer) observer(0, population);

  SolveResult result;
  auto track_best = [&](std::span<const Chromosome> members, int generation) {
    bool improved = false;
    for (const auto& ch : members) {
      if (result.best.strategies.empty() || *ch.fitness > result.best_fitness + kImprovementTolerance) {
        result.best = ch;
        result.best_fitness = *ch.fitness;
        result.generations_to_best = generation;
        improved = true;
      }
    }
    return improved;
  };
  track_best(population, 0);

  int stagnant = 0;
  for (int gen = 1; gen <= params.n_gen; ++gen) {
    const auto g = static_cast<std::uint64_t>(gen);
    std::vector<Chromosome> offspring;

    if (!ablation.no_crossover) {
      Rng pairing = derive_stream(params.seed, g, kPairing);
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < population.size(); ++i) {
        if (bernoulli(pairing, params.p_c)) chosen.push_back(i);
      }
      std::shuffle(chosen.begin(), chosen.end(), pairing);
      if (chosen.size() % 2 == 1) chosen.pop_back();
      const auto pairs = static_cast<std::ptrdiff_t>(chosen.size() / 2);
      std::vector<Chromosome> children(static_cast<std::size_t>(pairs));
#pragma omp parallel for schedule(dynamic, 2)
      for (std::ptrdiff_t p = 0; p < pairs; ++p) {
        const auto idx = static_cast<std::size_t>(p);
        Rng rng = derive_stream(params.seed, g, kCrossover, idx);
        Chromosome child = crossover(population[chosen[2 * idx]], population[chosen[2 * idx + 1]],
                                     game, ablation, rng);
        if (local_opt) repair(child, game, rng);
        evaluate(child, game);
        children[idx] = std::move(child);
      }
      for (auto& c : children) offspring.push_back(std::move(c));
    }

    if (!ablation.no_mutation) {
      Rng picking = derive_stream(params.seed, g, kMutation);
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < population.size(); ++i) {
        if (bernoulli(picking, params.p_m)) chosen.push_back(i);
      }
      const auto count = static_cast<std::ptrdiff_t>(chosen.size());
      std::vector<Chromosome> mutants(chosen.size());
#pragma omp parallel for schedule(dynamic, 2)
      for (std::ptrdiff_t m = 0; m < count; ++m) {
        const auto idx = static_cast<std::size_t>(m);
        Rng rng = derive_stream(params.seed, g, kMutation, chosen[idx] + 1);
        mutants[idx] = mutate(population[chosen[idx]], game, params, rng).result;
      }
      for (auto& c : mutants) offspring.push_back(std::move(c));
    }

    const bool improved = track_best(offspring, gen);

    std::vector<Chromosome> pool = std::move(population);
    pool.reserve(pool.size() + offspring.size());
    for (auto& c : offspring) pool.push_back(std::move(c));
    Rng selecting = derive_stream(params.seed, g, kSelection);
    population = select(pool, params, selecting);

    stagnant = improved ? 0 : stagnant + 1;
    bool refreshed = false;
    if (!ablation.no_refresh && stagnant >= params.n_ref) {
      Rng refreshing = derive_stream(params.seed, g, kRefresh);
      refresh(population, game, refreshing);
      stagnant = 0;
      refreshed = true;
      track_best(population, gen);
    }

    GenerationRecord rec;
    rec.generation = gen;
    rec.best_fitness = result.best_fitness;
    double fit_sum = 0.0;
    double size_sum = 0.0;
    for (const auto& ch : population) {
      fit_sum += *ch.fitness;
      size_sum += static_cast<double>(ch.strategies.size());
    }
    rec.mean_fitness = fit_sum / static_cast<double>(population.size());
    rec.mean_strategy_count = size_sum / static_cast<double>(population.size());
    rec.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
    rec.refreshed = refreshed;
    result.history.push_back(rec);
    if (observer) observer(gen, population);
  }
  return result;
}

}  // namespace sgs
