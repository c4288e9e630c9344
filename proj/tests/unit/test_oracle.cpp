#include <doctest.h>
#include <omp.h>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "sgs/oracle.hpp"

using namespace sgs;
using oracle::Terminal;

namespace {

// Analytic payoffs with the weak and strong signals exchanged.
Payoff swapped_signals(const Chromosome& ch, const GameInstance& game, const AdversaryStrategy& adv) {
  Chromosome flipped = ch;
  for (auto* t : {&flipped.signaling.detected, &flipped.signaling.missed})
    for (auto& row : *t)
      for (auto& x : row) x = 1.0 - x;
  return payoff_against(flipped, game, adv);
}

}  // namespace

TEST_CASE("deterministic playouts") {
  const GameInstance game = fixtures::k2_game();
  const Chromosome ch = fixtures::k2_chromosome();
  Rng rng = derive_stream(31);
  for (int i = 0; i < 1000; ++i) {
    const auto out = oracle::simulate_once(ch, game, AdversaryStrategy::from_scheme(1, 1), rng);
    CHECK(out.terminal == Terminal::attack_interrupted);
    CHECK(out.defender_payoff == 0.0);
    CHECK(out.adversary_payoff == 0.0);
    CHECK(oracle::simulate_once(ch, game, AdversaryStrategy::from_scheme(0, 0), rng).terminal == Terminal::caught);
  }

  GameInstance blind = fixtures::k2_game();
  blind.graph = Graph(3);
  blind.graph.add_edge(0, 1);
  blind.utilities.assign(3, blind.utilities[0]);
  blind.gamma = 1.0;
  Chromosome iso;
  iso.strategies.push_back({PureStrategy{{0}, {2}, {0}}, 1.0});
  iso.signaling = SignalingTable::filled(3, 0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto out = oracle::simulate_once(iso, blind, AdversaryStrategy::from_scheme(2, 0), rng);
    CHECK(out.terminal == Terminal::attack_successful);
    CHECK(out.adversary_payoff == 1.0);
    // fleeing on the weak signal proves the weak signal was observed
    CHECK(oracle::simulate_once(iso, blind, AdversaryStrategy::from_scheme(2, 2), rng).terminal ==
          Terminal::attack_interrupted);
  }
}

TEST_CASE("fleeing never ends in a catch") {
  Rng rng = derive_stream(32);
  for (int trial = 0; trial < 20; ++trial) {
    const GameInstance game = fixtures::random_small_game(6, rng);
    const Chromosome ch = fixtures::random_mixed(game, 3, rng);
    for (Vertex t = 0; t < 6; ++t) {
      const auto est = oracle::mc_estimate(ch, game, AdversaryStrategy::from_scheme(t, 7), 2000, rng);
      CHECK(est.terminal_counts[0] == 0);
      CHECK(est.terminal_counts[1] == 0);
      CHECK(est.terminal_counts[2] == 2000);
    }
  }
}

TEST_CASE("estimates of deterministic playouts are exact") {
  const GameInstance game = fixtures::k2_game();
  const Chromosome ch = fixtures::k2_chromosome();
  Rng rng = derive_stream(33);
  const auto est = oracle::mc_estimate(ch, game, AdversaryStrategy::from_scheme(1, 0), 5000, rng);
  CHECK(est.mean_def == 1.0);
  CHECK(est.mean_adv == -1.0);
  CHECK(est.stderr_def == 0.0);
  CHECK(est.stderr_adv == 0.0);
  CHECK_THROWS_AS(oracle::mc_estimate(ch, game, AdversaryStrategy{}, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(oracle::validate(ch, game, 0, rng), std::invalid_argument);
}

TEST_CASE("noisy single-edge game agrees with the evaluator") {
  GameInstance game = fixtures::k2_game();
  game.gamma = 0.5;
  Chromosome ch = fixtures::k2_chromosome();
  ch.signaling = SignalingTable::filled(2, 0.3, 0.6);
  Rng rng = derive_stream(34);
  for (unsigned s = 0; s < kReactionSchemes; ++s) {
    const auto adv = AdversaryStrategy::from_scheme(1, s);
    const auto est = oracle::mc_estimate(ch, game, adv, 1'000'000, rng);
    const Payoff exact = payoff_against(ch, game, adv);
    CHECK(std::abs(est.mean_def - exact.defender) <= 4.0 * est.stderr_def + 1e-12);
    CHECK(std::abs(est.mean_adv - exact.adversary) <= 4.0 * est.stderr_adv + 1e-12);
  }
  const auto report = oracle::validate(ch, game, 100'000, rng);
  CHECK(report.pass);
  CHECK(report.comparisons == 16);
  CHECK(report.samples_per_comparison == 100'000);
  const std::string json = oracle::report_json(report);
  CHECK(json.find("\"max_abs_z\"") != std::string::npos);
}

TEST_CASE("standard error shrinks with the square root of the sample count") {
  GameInstance game = fixtures::k2_game();
  game.gamma = 0.5;
  Chromosome ch = fixtures::k2_chromosome();
  ch.signaling = SignalingTable::filled(2, 0.3, 0.6);
  Rng rng = derive_stream(35);
  const auto adv = AdversaryStrategy::from_scheme(1, 1);
  const auto small = oracle::mc_estimate(ch, game, adv, 200'000, rng);
  const auto large = oracle::mc_estimate(ch, game, adv, 400'000, rng);
  REQUIRE(large.stderr_adv > 0.0);
  CHECK(small.stderr_adv / large.stderr_adv == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("terminal frequencies follow the outcome tree") {
  Rng rng = derive_stream(36);
  for (int trial = 0; trial < 10; ++trial) {
    const GameInstance game = fixtures::random_small_game(4 + trial % 5, rng);
    const Chromosome ch = fixtures::random_mixed(game, 1 + trial % 4, rng);
    const Vertex t = static_cast<Vertex>(uniform_index(rng, game.vertex_count()));
    const auto adv = AdversaryStrategy::from_scheme(t, static_cast<unsigned>(uniform_index(rng, 8)));
    std::array<double, 3> expected{};
    for (const auto& leaf : brute::leaves(ch, game, t)) {
      for (int obs = 0; obs < 3; ++obs) {
        const double w = leaf.prob * game.pi.p[obs][leaf.truth];
        if (adv.reaction[obs] == Reaction::flee) {
          expected[2] += w;
        } else {
          expected[leaf.caught ? 0 : 1] += w;
        }
      }
    }
    constexpr std::uint64_t kSamples = 1'000'000;
    const auto est = oracle::mc_estimate(ch, game, adv, kSamples, rng);
    double chi2 = 0.0;
    int df = -1;
    for (std::size_t k = 0; k < 3; ++k) {
      const double e = expected[k] * kSamples;
      if (e < 1e-9) {
        CHECK(est.terminal_counts[k] == 0);
        continue;
      }
      chi2 += std::pow(static_cast<double>(est.terminal_counts[k]) - e, 2) / e;
      ++df;
    }
    const double critical = df <= 0 ? 0.0 : (df == 1 ? 10.828 : 13.816);  // alpha = 0.001
    CHECK(chi2 <= critical + 1e-6);
  }
}

TEST_CASE("estimates do not depend on the thread count") {
  Rng setup = derive_stream(37);
  const GameInstance game = fixtures::random_small_game(7, setup);
  const Chromosome ch = fixtures::random_mixed(game, 4, setup);
  const auto adv = AdversaryStrategy::from_scheme(3, 2);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  Rng a = derive_stream(99);
  const auto one = oracle::mc_estimate(ch, game, adv, 300'000, a);
  omp_set_num_threads(4);
  Rng b = derive_stream(99);
  const auto four = oracle::mc_estimate(ch, game, adv, 300'000, b);
  omp_set_num_threads(saved);
  CHECK(one.terminal_counts == four.terminal_counts);
  CHECK(one.mean_def == four.mean_def);
}

TEST_CASE("a swapped-signal evaluator fails validation") {
  GameInstance game = fixtures::k2_game();
  game.gamma = 0.3;
  Chromosome ch = fixtures::k2_chromosome();
  ch.signaling = SignalingTable::filled(2, 0.9, 0.2);
  Rng rng = derive_stream(38);
  CHECK(oracle::validate(ch, game, 100'000, rng).pass);
  const auto bad = oracle::validate(ch, game, 100'000, rng, swapped_signals);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_abs_z > oracle::kZThreshold);
}

TEST_CASE("large games are checked on 32 adversary strategies") {
  Rng rng = derive_stream(39);
  const GameInstance game = fixtures::random_small_game(14, rng);
  const Chromosome ch = fixtures::random_mixed(game, 3, rng);
  const auto report = oracle::validate(ch, game, 20'000, rng);
  CHECK(report.comparisons == 32);
}
