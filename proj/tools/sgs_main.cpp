// sgs: generate benchmark games, solve them, evaluate and validate strategies.

#include <sys/resource.h>

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fmt/format.h>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgs/bench_gen.hpp"
#include "sgs/eval.hpp"
#include "sgs/evolve.hpp"
#include "sgs/game_io.hpp"
#include "sgs/oracle.hpp"
#include "sgs/strategy_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::int64_t peak_memory_bytes() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<std::int64_t>(usage.ru_maxrss) * 1024;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

sgs::EvolveParams load_params(const std::string& path) {
  if (path.empty()) return {};
  return sgs::params_from_json(sgs::read_text_file(path));
}

std::vector<std::string> variant_names() {
  std::vector<std::string> out{"full"};
  for (const auto& n : sgs::Ablation::valid_names()) out.push_back(n);
  return out;
}

// "full" or switch names joined by '+'.
sgs::Ablation parse_variant(const std::string& variant) {
  if (variant == "full") return {};
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto plus = variant.find('+', start);
    parts.push_back(variant.substr(start, plus - start));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  try {
    return sgs::Ablation::parse(parts);
  } catch (const sgs::ConfigError&) {
    std::string valid;
    for (const auto& n : variant_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw UsageError("unknown variant '" + variant + "' (valid: " + valid + ")");
  }
}

struct GenerateArgs {
  std::string family;
  std::optional<int> n, cliques, clique_size, rule;
  int count = 0;
  std::uint64_t seed = 0;
  std::string out;
  double beta = 0.3;
  double p = 0.3;
};

int cmd_generate(const GenerateArgs& a) {
  sgs::bench::SuiteConfig cfg;
  cfg.family = sgs::bench::parse_family(a.family);
  const bool ld = cfg.family == sgs::bench::Family::locally_dense;
  if (ld && a.n) throw UsageError("--n does not apply to the locally-dense family");
  if (!ld && (a.cliques || a.clique_size || a.rule)) {
    throw UsageError("--cliques/--clique-size/--rule only apply to the locally-dense family");
  }
  cfg.n = a.n;
  cfg.cliques = a.cliques;
  cfg.clique_size = a.clique_size;
  cfg.rule = a.rule;
  cfg.games_per_setting = a.count;
  cfg.seed = a.seed;
  cfg.ws_beta = a.beta;
  cfg.er_p = a.p;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  prepare_dir(a.out);
  const auto games = sgs::bench::write_suite(cfg, a.out);
  std::cout << "wrote " << games.size() << " games to " << a.out << "\n";
  return kExitOk;
}

struct SolveArgs {
  std::string game;
  std::string params;
  std::uint64_t seed = 0;
  std::string out;
  std::vector<std::string> ablation;
};

int cmd_solve(const SolveArgs& a, bool timing) {
  const auto started = std::chrono::steady_clock::now();
  const sgs::GameInstance game = sgs::load_game_file(a.game);
  sgs::EvolveParams params = load_params(a.params);
  params.seed = a.seed;
  if (!a.ablation.empty()) {
    auto names = params.ablation.names();
    names.insert(names.end(), a.ablation.begin(), a.ablation.end());
    params.ablation = sgs::Ablation::parse(names);
  }
  params.validate();
  const fs::path out(a.out);
  prepare_dir(out);

  const sgs::SolveResult result = sgs::run(game, params);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();

  sgs::write_text_file(out / "strategy.json", sgs::save_strategy(result.best));
  sgs::write_text_file(out / "history.csv", sgs::history_csv(result.history, timing));
  nlohmann::ordered_json summary;
  summary["best_fitness"] = result.best_fitness;
  summary["generations_to_best"] = result.generations_to_best;
  summary["wall_time_ms"] = timing ? elapsed : 0;
  summary["peak_mem_bytes"] = peak_memory_bytes();
  summary["seed"] = params.seed;
  const std::string text = summary.dump(2) + "\n";
  sgs::write_text_file(out / "result.json", text);
  std::cout << text;
  return kExitOk;
}

int cmd_evaluate(const std::string& game_path, const std::string& strategy_path) {
  const sgs::GameInstance game = sgs::load_game_file(game_path);
  sgs::Chromosome ch = sgs::load_strategy_file(strategy_path, &game);
  std::cout << sgs::report_json(sgs::best_response(ch, game));
  return kExitOk;
}

int cmd_oracle(const std::string& game_path, const std::string& strategy_path, std::uint64_t samples,
               std::uint64_t seed) {
  const sgs::GameInstance game = sgs::load_game_file(game_path);
  const sgs::Chromosome ch = sgs::load_strategy_file(strategy_path, &game);
  sgs::Rng rng = sgs::derive_stream(seed);
  const auto report = sgs::oracle::validate(ch, game, samples, rng);
  std::cout << sgs::oracle::report_json(report);
  return report.pass ? kExitOk : kExitFailure;
}

struct AblateArgs {
  std::string games;
  std::vector<std::string> variants;
  int seeds = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::string params;
};

int cmd_ablate(const AblateArgs& a, bool timing) {
  std::vector<std::pair<std::string, sgs::Ablation>> variants;
  for (const auto& v : a.variants) variants.emplace_back(v, parse_variant(v));
  const sgs::EvolveParams base = load_params(a.params);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.games)) {
    if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no game files in " + a.games);
  std::vector<sgs::GameInstance> games;
  for (const auto& f : files) games.push_back(sgs::load_game_file(f));

  const fs::path out(a.out);
  if (out.has_parent_path()) prepare_dir(out.parent_path());
  std::string csv = "variant,game,seed,best_fitness,generations_to_best,wall_time_ms\n";
  sgs::write_text_file(out, csv);
  for (const auto& [name, ablation] : variants) {
    for (std::size_t g = 0; g < games.size(); ++g) {
      for (int s = 0; s < a.seeds; ++s) {
        sgs::EvolveParams params = base;
        params.ablation = ablation;
        params.seed = a.seed + static_cast<std::uint64_t>(s);
        const auto started = std::chrono::steady_clock::now();
        const auto result = sgs::run(games[g], params);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
        csv += fmt::format("{},{},{},{},{},{}\n", name, files[g].stem().string(), params.seed,
                           result.best_fitness, result.generations_to_best, timing ? ms : 0);
      }
    }
    sgs::write_text_file(out, csv);
  }
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Security games with signaling: generator, evolutionary solver and validator"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  bool no_timing = false;
  app.add_option("--threads", threads, "OpenMP worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-timing", no_timing, "write wall-clock columns as 0 for byte-reproducible output");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "generate a benchmark suite");
  generate->add_option("--family", gen.family, "graph family")
      ->required()
      ->check(CLI::IsMember({"sparse", "moderate", "dense", "locally-dense", "erdos-renyi"}));
  generate->add_option("--n", gen.n, "vertex count (all of 10..100 step 10 when omitted)");
  generate->add_option("--cliques", gen.cliques, "number of cliques (3..10 when omitted)");
  generate->add_option("--clique-size", gen.clique_size, "clique size (3..10 when omitted)");
  generate->add_option("--rule", gen.rule, "inter-clique rule")->check(CLI::Range(1, 3));
  generate->add_option("--count", gen.count, "games per setting")->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "master seed")->required();
  generate->add_option("--out", gen.out, "output directory")->required();
  generate->add_option("--beta", gen.beta, "Watts-Strogatz rewiring probability")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--p", gen.p, "Erdos-Renyi edge probability")->check(CLI::Range(0.0, 1.0));

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "run the evolutionary solver on one game");
  solve_cmd->add_option("--game", solve.game, "game file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--params", solve.params, "parameter file (defaults when omitted)")
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--seed", solve.seed, "master seed")->required();
  solve_cmd->add_option("--out", solve.out, "output directory")->required();
  solve_cmd->add_option("--ablation", solve.ablation, "comma-separated ablation switches")
      ->delimiter(',')
      ->check(CLI::IsMember(sgs::Ablation::valid_names()));

  std::string eval_game, eval_strategy;
  auto* evaluate = app.add_subcommand("evaluate", "print the best-response report of a strategy");
  evaluate->add_option("--game", eval_game, "game file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--strategy", eval_strategy, "strategy file")->required()->check(CLI::ExistingFile);

  std::string or_game, or_strategy;
  std::uint64_t or_samples = 0, or_seed = 0;
  auto* oracle = app.add_subcommand("oracle", "check the evaluator against Monte-Carlo playouts");
  oracle->add_option("--game", or_game, "game file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--strategy", or_strategy, "strategy file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--samples", or_samples, "playouts per adversary strategy")
      ->required()
      ->check(CLI::PositiveNumber);
  oracle->add_option("--seed", or_seed, "seed")->required();

  AblateArgs abl;
  auto* ablate = app.add_subcommand("ablate", "run solver variants over a directory of games");
  ablate->add_option("--games", abl.games, "directory of game files")->required()->check(CLI::ExistingDirectory);
  ablate->add_option("--variants", abl.variants, "comma-separated variants: full or switch names joined by '+'")
      ->required()
      ->delimiter(',');
  ablate->add_option("--seeds", abl.seeds, "seeds per variant and game")->check(CLI::PositiveNumber);
  ablate->add_option("--seed", abl.seed, "first seed; run i uses seed + i");
  ablate->add_option("--out", abl.out, "CSV output file")->required();
  ablate->add_option("--params", abl.params, "parameter file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (threads > 0) omp_set_num_threads(threads);
  const bool timing = !no_timing;
  try {
    if (*generate) return cmd_generate(gen);
    if (*solve_cmd) return cmd_solve(solve, timing);
    if (*evaluate) return cmd_evaluate(eval_game, eval_strategy);
    if (*oracle) return cmd_oracle(or_game, or_strategy, or_samples, or_seed);
    if (*ablate) {
      for (const auto& v : abl.variants) parse_variant(v);
      return cmd_ablate(abl, timing);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
