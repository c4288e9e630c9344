#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "fixtures.hpp"
#include "json.hpp"
#include "sgs/game_io.hpp"
#include "sgs/strategy_io.hpp"

namespace fs = std::filesystem;
using namespace sgs;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "sgs_cli_test";

struct Result {
  int code;
  std::string out;
};

Result sgs_cli(const std::string& args) {
  const fs::path out = kRoot / "stdout.txt";
  const std::string cmd = std::string(SGS_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, fs::exists(out) ? read_text_file(out) : ""};
}

std::string path(const fs::path& p) { return p.string(); }

void write_small_params() {
  write_text_file(kRoot / "params.json", R"({"n_pop": 20, "n_gen": 30, "n_ref": 10})");
}

struct Scratch {
  Scratch() {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
    write_small_params();
  }
  ~Scratch() { fs::remove_all(kRoot); }
};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  Scratch s;
  CHECK(sgs_cli("").code == 2);
  CHECK(sgs_cli("--help").code == 0);
  CHECK(sgs_cli("generate --family sparse --n 20 --count 5 --out " + path(kRoot / "g")).code == 2);
  CHECK(sgs_cli("generate --family tree --n 20 --count 5 --seed 1 --out " + path(kRoot / "g")).code == 2);
  CHECK(sgs_cli("generate --family sparse --rule 2 --count 1 --seed 1 --out " + path(kRoot / "g")).code == 2);
  CHECK(sgs_cli("frobnicate").code == 2);
}

TEST_CASE("generate") {
  Scratch s;
  REQUIRE(sgs_cli("generate --family sparse --n 20 --count 5 --seed 7 --out " + path(kRoot / "g")).code == 0);
  int games = 0;
  for (const auto& e : fs::directory_iterator(kRoot / "g")) {
    if (e.path().filename() == "manifest.json") continue;
    CHECK_NOTHROW(load_game_file(e.path()));
    ++games;
  }
  CHECK(games == 5);
  CHECK(fs::exists(kRoot / "g" / "manifest.json"));

  REQUIRE(sgs_cli("generate --family locally-dense --cliques 4 --clique-size 6 --rule 1 --count 1 --seed 7 --out " +
                  path(kRoot / "ld"))
              .code == 0);
  CHECK(load_game_file(kRoot / "ld" / "04_06_1.json").vertex_count() == 24);
}

TEST_CASE("solve, evaluate and oracle") {
  Scratch s;
  REQUIRE(sgs_cli("generate --family sparse --n 10 --count 1 --seed 3 --out " + path(kRoot / "g")).code == 0);
  const std::string game = path(kRoot / "g" / "sparse_010_00.json");
  const std::string params = path(kRoot / "params.json");
  REQUIRE(sgs_cli("solve --game " + game + " --params " + params + " --seed 5 --out " + path(kRoot / "a")).code == 0);
  REQUIRE(sgs_cli("solve --game " + game + " --params " + params + " --seed 5 --out " + path(kRoot / "b")).code == 0);
  CHECK(read_text_file(kRoot / "a" / "strategy.json") == read_text_file(kRoot / "b" / "strategy.json"));

  const auto result = nlohmann::json::parse(read_text_file(kRoot / "a" / "result.json"));
  for (const char* key : {"best_fitness", "generations_to_best", "wall_time_ms", "peak_mem_bytes", "seed"}) {
    CHECK(result.contains(key));
  }
  CHECK(result["seed"] == 5);
  CHECK(result["peak_mem_bytes"].get<std::int64_t>() > 0);
  const std::string history = read_text_file(kRoot / "a" / "history.csv");
  CHECK(history.rfind("generation,best_fitness,mean_fitness,mean_strategy_count,wall_time_ms,refreshed\n", 0) == 0);
  CHECK(std::count(history.begin(), history.end(), '\n') == 31);

  const Result eval = sgs_cli("evaluate --game " + game + " --strategy " + path(kRoot / "a" / "strategy.json"));
  REQUIRE(eval.code == 0);
  const auto report = nlohmann::json::parse(eval.out);
  CHECK(report["defender_payoff"].get<double>() == result["best_fitness"].get<double>());
  CHECK(report.contains("reaction"));

  const Result oracle = sgs_cli("oracle --game " + game + " --strategy " + path(kRoot / "a" / "strategy.json") +
                                " --samples 100000 --seed 1");
  CHECK(oracle.code == 0);
  const auto validation = nlohmann::json::parse(oracle.out);
  CHECK(validation["pass"] == true);
  CHECK(validation.contains("max_abs_z"));
  CHECK(validation["comparisons"] == 80);

  CHECK(sgs_cli("oracle --game " + game + " --strategy " + path(kRoot / "a" / "strategy.json") +
                " --samples 0 --seed 1")
            .code == 2);

  CHECK(sgs_cli("solve --game " + game + " --params " + params + " --seed 5 --ablation no_m3,no_refresh --out " +
                path(kRoot / "c"))
            .code == 0);
  CHECK(sgs_cli("solve --game " + game + " --params " + params + " --seed 5 --ablation no_m4 --out " +
                path(kRoot / "c"))
            .code == 2);
  CHECK(sgs_cli("solve --game " + game + " --out " + path(kRoot / "c")).code == 2);

  write_text_file(kRoot / "bad_params.json", R"({"n_pop": 1})");
  CHECK(sgs_cli("solve --game " + game + " --params " + path(kRoot / "bad_params.json") + " --seed 1 --out " +
                path(kRoot / "d"))
            .code == 1);
}

TEST_CASE("evaluate reports errors and the canonical example") {
  Scratch s;
  save_game_file(fixtures::k2_game(), kRoot / "k2.json");
  write_text_file(kRoot / "k2_strategy.json", save_strategy(fixtures::k2_chromosome()));
  const Result ok = sgs_cli("evaluate --game " + path(kRoot / "k2.json") + " --strategy " +
                            path(kRoot / "k2_strategy.json"));
  REQUIRE(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["defender_payoff"] == 0.0);

  write_text_file(kRoot / "broken.json", R"({"strategies": [{"patrollers": "x"}]})");
  CHECK(sgs_cli("evaluate --game " + path(kRoot / "k2.json") + " --strategy " + path(kRoot / "broken.json")).code ==
        1);
  CHECK(sgs_cli("evaluate --game " + path(kRoot / "missing.json") + " --strategy " + path(kRoot / "broken.json"))
            .code == 2);
}

TEST_CASE("ablate") {
  Scratch s;
  REQUIRE(sgs_cli("generate --family erdos-renyi --n 10 --count 2 --seed 3 --out " + path(kRoot / "g")).code == 0);
  const std::string base = "ablate --games " + path(kRoot / "g") + " --params " + path(kRoot / "params.json");
  REQUIRE(sgs_cli(base + " --variants full,no_crossover,no_mutation --seeds 2 --out " + path(kRoot / "abl.csv"))
              .code == 0);
  const std::string csv = read_text_file(kRoot / "abl.csv");
  CHECK(csv.rfind("variant,game,seed,best_fitness,generations_to_best,wall_time_ms\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 2 * 2);
  CHECK(csv.find("\nno_mutation,erdos-renyi_010_01,2,") != std::string::npos);
  CHECK(sgs_cli(base + " --variants full,bogus --seeds 2 --out " + path(kRoot / "x.csv")).code == 2);
}

TEST_CASE("thread count does not change output") {
  Scratch s;
  REQUIRE(sgs_cli("generate --family moderate --n 20 --count 1 --seed 4 --out " + path(kRoot / "g")).code == 0);
  const std::string game = path(kRoot / "g" / "moderate_020_00.json");
  const std::string common = " --no-timing solve --game " + game + " --params " + path(kRoot / "params.json") + " --seed 8";
  REQUIRE(sgs_cli("--threads 1" + common + " --out " + path(kRoot / "t1")).code == 0);
  REQUIRE(sgs_cli("--threads 4" + common + " --out " + path(kRoot / "t4")).code == 0);
  for (const char* f : {"strategy.json", "history.csv"}) {
    CHECK(read_text_file(kRoot / "t1" / f) == read_text_file(kRoot / "t4" / f));
  }
}
