#include <doctest.h>

#include <array>
#include <set>

#include "fixtures.hpp"
#include "sgs/strategy_io.hpp"

using namespace sgs;

namespace {

GameInstance game_on(Graph g, int k, int l) {
  GameInstance game;
  game.name = "t";
  game.utilities.assign(g.vertex_count(), TargetUtility{1, -1, 1, -1});
  game.graph = std::move(g);
  game.num_patrollers = k;
  game.num_sensors = l;
  game.validate();
  return game;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("random pure strategy on a single edge") {
  const GameInstance game = fixtures::k2_game();
  Rng rng = derive_stream(1);
  for (int i = 0; i < 200; ++i) {
    const auto e = random_pure_strategy(game, rng);
    REQUIRE(e.patrollers.size() == 1);
    REQUIRE(e.sensors.size() == 1);
    CHECK(std::set<Vertex>{e.patrollers[0], e.sensors[0]} == std::set<Vertex>{0, 1});
    CHECK(e.reallocation[0] <= 1);
    CHECK_FALSE(feasibility_violation(e, game));
  }
}

TEST_CASE("patroller on an isolated vertex stays") {
  Graph g(3);
  g.add_edge(1, 2);
  const GameInstance game = game_on(g, 1, 1);
  Rng rng = derive_stream(2);
  int seen = 0;
  for (int i = 0; i < 500; ++i) {
    const auto e = random_pure_strategy(game, rng);
    if (e.patrollers[0] == 0) {
      ++seen;
      CHECK(e.reallocation[0] == 0);
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("patroller placement is uniform") {
  const GameInstance game = game_on(complete(5), 1, 0);
  Rng rng = derive_stream(3);
  constexpr int kDraws = 10000;
  std::array<int, 5> hits{};
  for (int i = 0; i < kDraws; ++i) ++hits[random_pure_strategy(game, rng).patrollers[0]];
  double chi2 = 0.0;
  for (int h : hits) {
    CHECK(static_cast<double>(h) / kDraws == doctest::Approx(0.2).epsilon(0.1));
    chi2 += (h - kDraws / 5.0) * (h - kDraws / 5.0) / (kDraws / 5.0);
  }
  CHECK(chi2 < 18.467);  // chi-square, 4 degrees of freedom, alpha = 0.001
}

TEST_CASE("random chromosome shape and signaling moments") {
  const GameInstance game = fixtures::k2_game();
  Rng rng = derive_stream(4);
  double sum = 0.0;
  std::size_t count = 0;
  for (int i = 0; i < 10000; ++i) {
    Chromosome ch = random_chromosome(game, rng);
    REQUIRE(ch.strategies.size() == 1);
    CHECK(ch.strategies[0].prob == 1.0);
    CHECK_FALSE(chromosome_violation(ch, game));
    for (const auto* t : {&ch.signaling.detected, &ch.signaling.missed}) {
      for (const auto& row : *t) {
        REQUIRE(row.size() == 2);
        for (double x : row) {
          sum += x;
          ++count;
        }
      }
    }
    const Chromosome before = ch;
    repair(ch, game, rng);
    CHECK(ch.strategies == before.strategies);
  }
  CHECK(count == 10000u * 12u);
  CHECK(sum / static_cast<double>(count) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("repair replaces an illegal move by a neighbor or stay") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const GameInstance game = game_on(g, 1, 0);
  Rng rng = derive_stream(5);
  std::set<Vertex> seen;
  for (int i = 0; i < 200; ++i) {
    const auto fixed = repair(PureStrategy{{0}, {}, {3}}, game, rng);
    CHECK((fixed.reallocation[0] == 0 || fixed.reallocation[0] == 1));
    seen.insert(fixed.reallocation[0]);
  }
  CHECK(seen.size() == 2);
}

TEST_CASE("repair moves a spare sensor to a free vertex") {
  const GameInstance game = game_on(fixtures::path_graph(3), 1, 1);
  Rng rng = derive_stream(6);
  std::set<Vertex> seen;
  for (int i = 0; i < 200; ++i) {
    const auto fixed = repair(PureStrategy{{2}, {2}, {2}}, game, rng);
    CHECK(fixed.patrollers[0] == 2);
    CHECK(fixed.sensors[0] != 2);
    seen.insert(fixed.sensors[0]);
    CHECK_FALSE(feasibility_violation(fixed, game));
  }
  CHECK(seen == std::set<Vertex>{0, 1});
}

TEST_CASE("repair leaves feasible strategies alone and draws nothing") {
  Rng rng = derive_stream(7);
  for (int trial = 0; trial < 100; ++trial) {
    const GameInstance game = fixtures::random_small_game(8, rng);
    const PureStrategy e = random_pure_strategy(game, rng);
    Rng a = derive_stream(trial);
    Rng b = derive_stream(trial);
    CHECK(repair(e, game, a) == e);
    CHECK(a() == b());
  }
}

TEST_CASE("repair output is always feasible") {
  Rng rng = derive_stream(8);
  for (int trial = 0; trial < 500; ++trial) {
    const GameInstance game = fixtures::random_small_game(2 + trial % 9, rng);
    const std::size_t n = game.vertex_count();
    PureStrategy e;
    for (int i = 0; i < game.num_patrollers; ++i) {
      e.patrollers.push_back(static_cast<Vertex>(uniform_index(rng, n)));
      e.reallocation.push_back(static_cast<Vertex>(uniform_index(rng, n)));
    }
    for (int i = 0; i < game.num_sensors; ++i) e.sensors.push_back(static_cast<Vertex>(uniform_index(rng, n)));
    const auto fixed = repair(e, game, rng);
    CHECK_FALSE(feasibility_violation(fixed, game));
    CHECK(repair(fixed, game, rng) == fixed);
  }
}

TEST_CASE("allocation states") {
  const GameInstance line = game_on(fixtures::path_graph(2), 1, 1);
  CHECK(allocation_state({{0}, {1}, {1}}, line, 1) == AllocationState::sensor_visited);
  CHECK(allocation_state({{0}, {1}, {0}}, line, 1) == AllocationState::sensor_adjacent);
  CHECK(allocation_state({{0}, {1}, {0}}, line, 0) == AllocationState::patroller);

  Graph g(3);
  g.add_edge(0, 1);
  const GameInstance three = game_on(g, 1, 1);
  CHECK(allocation_state({{0}, {2}, {0}}, three, 2) == AllocationState::sensor_isolated);
  CHECK(allocation_state({{0}, {2}, {0}}, three, 1) == AllocationState::uncovered);
}

TEST_CASE("allocation states partition the vertices") {
  Rng rng = derive_stream(9);
  for (int trial = 0; trial < 300; ++trial) {
    const GameInstance game = fixtures::random_small_game(3 + trial % 8, rng);
    const PureStrategy e = random_pure_strategy(game, rng);
    int patrollers = 0, sensors = 0;
    Coverage cov;
    cov.compute(e, game.graph);
    for (Vertex v = 0; v < game.vertex_count(); ++v) {
      const auto s = allocation_state(e, game, v);
      CHECK(s == cov.state[v]);
      if (s == AllocationState::patroller) ++patrollers;
      if (is_sensor(s)) ++sensors;
      if (s == AllocationState::sensor_visited) {
        bool found = false;
        for (std::size_t i = 0; i < e.patrollers.size(); ++i) {
          if (e.reallocation[i] == v && (e.patrollers[i] == v || game.graph.has_edge(e.patrollers[i], v))) {
            found = true;
          }
        }
        CHECK(found);
      }
    }
    CHECK(patrollers == game.num_patrollers);
    CHECK(sensors == game.num_sensors);
  }
}

TEST_CASE("feasibility checks catch each defect") {
  const GameInstance game = game_on(fixtures::path_graph(3), 1, 1);
  CHECK_FALSE(feasibility_violation({{0}, {2}, {1}}, game));
  CHECK(feasibility_violation({{0}, {0}, {0}}, game));
  CHECK(feasibility_violation({{0}, {2}, {2}}, game));
  CHECK(feasibility_violation({{0}, {}, {0}}, game));
  CHECK(feasibility_violation({{0, 1}, {2}, {0, 1}}, game));

  Chromosome ch;
  ch.strategies = {{{{0}, {2}, {1}}, 0.5}, {{{1}, {0}, {1}}, 0.4}};
  ch.signaling = SignalingTable::filled(3, 0.5, 0.5);
  CHECK(chromosome_violation(ch, game));
  ch.strategies[1].prob = 0.5;
  CHECK_FALSE(chromosome_violation(ch, game));
  ch.signaling.missed[2][1] = 1.5;
  CHECK(chromosome_violation(ch, game));
}

TEST_CASE("strategy documents round-trip") {
  Rng rng = derive_stream(10);
  for (int trial = 0; trial < 50; ++trial) {
    const GameInstance game = fixtures::random_small_game(6, rng);
    const Chromosome ch = fixtures::random_mixed(game, 1 + trial % 4, rng);
    const std::string text = save_strategy(ch);
    const Chromosome back = load_strategy(text, &game);
    CHECK(back.strategies == ch.strategies);
    CHECK(back.signaling == ch.signaling);
    CHECK(save_strategy(back) == text);
  }
}

TEST_CASE("strategy documents are validated") {
  const GameInstance game = fixtures::k2_game();
  CHECK_THROWS_AS(load_strategy("[]"), ValidationError);
  CHECK_THROWS_AS(load_strategy(R"({"strategies": []})"), ValidationError);
  Chromosome ch = fixtures::k2_chromosome();
  ch.strategies[0].strategy.sensors = {0};
  CHECK_NOTHROW(load_strategy(save_strategy(ch)));
  CHECK_THROWS_AS(load_strategy(save_strategy(ch), &game), ValidationError);
}
