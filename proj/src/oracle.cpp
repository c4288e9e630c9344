#include "sgs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace sgs::oracle {

Simulator::Simulator(const Chromosome& ch, const GameInstance& game) : ch_(ch), game_(game) {
  if (ch.strategies.empty()) throw std::invalid_argument("oracle: chromosome has no strategies");
  cumulative_.reserve(ch.strategies.size());
  double acc = 0.0;
  for (const auto& ws : ch.strategies) {
    acc += ws.prob;
    cumulative_.push_back(acc);
  }
}

Terminal Simulator::play(const AdversaryStrategy& adv, Rng& rng) const {
  const Vertex t = adv.target;
  const auto& g = game_.graph;

  // 1. defender draws a pure strategy
  const double u = uniform01(rng) * cumulative_.back();
  const std::size_t idx = std::min<std::size_t>(
      static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                               cumulative_.begin()),
      cumulative_.size() - 1);
  const PureStrategy& e = ch_.strategies[idx].strategy;

  // 2. what sits on the target
  const bool patroller_here = std::find(e.patrollers.begin(), e.patrollers.end(), t) != e.patrollers.end();
  const bool sensor_here =
      !patroller_here && std::find(e.sensors.begin(), e.sensors.end(), t) != e.sensors.end();
  bool arrives = false;   // some patroller ends its reaction-stage move on t
  bool neighbour = false; // some patroller starts next to t
  for (std::size_t i = 0; i < e.patrollers.size(); ++i) {
    const Vertex p = e.patrollers[i];
    const Vertex r = e.reallocation[i];
    const bool legal = r == p || (r < g.vertex_count() && g.has_edge(p, r));
    if ((legal ? r : p) == t) arrives = true;
    if (g.has_edge(p, t)) neighbour = true;
  }

  // 3. detection and signal
  Signal truth = Signal::none;
  bool detected = false;
  if (sensor_here) {
    const std::size_t row = arrives ? 1 : (neighbour ? 2 : 0);
    detected = uniform01(rng) >= game_.gamma;
    const double weak = detected ? ch_.signaling.detected[row][t] : ch_.signaling.missed[row][t];
    truth = uniform01(rng) < weak ? Signal::weak : Signal::strong;
  }

  // 4. noisy observation
  const double o = uniform01(rng);
  const std::size_t col = static_cast<std::size_t>(truth);
  Signal seen = Signal::strong;
  if (o < game_.pi.p[0][col]) {
    seen = Signal::none;
  } else if (o < game_.pi.p[0][col] + game_.pi.p[1][col]) {
    seen = Signal::weak;
  }

  // 5. reaction and resolution
  if (adv.reaction[static_cast<std::size_t>(seen)] == Reaction::flee) {
    return Terminal::attack_interrupted;
  }
  if (patroller_here) return Terminal::caught;
  if (!sensor_here) return arrives ? Terminal::caught : Terminal::attack_successful;
  if (detected) return (arrives || neighbour) ? Terminal::caught : Terminal::attack_successful;
  return arrives ? Terminal::caught : Terminal::attack_successful;
}

PlayoutOutcome Simulator::outcome(const AdversaryStrategy& adv, Terminal terminal) const {
  const auto& u = game_.utilities[adv.target];
  switch (terminal) {
    case Terminal::caught: return {terminal, u.def_caught, u.adv_caught};
    case Terminal::attack_successful: return {terminal, u.def_attacked, u.adv_success};
    case Terminal::attack_interrupted: break;
  }
  return {Terminal::attack_interrupted, 0.0, 0.0};
}

PlayoutOutcome simulate_once(const Chromosome& ch, const GameInstance& game,
                             const AdversaryStrategy& adv, Rng& rng) {
  Simulator sim(ch, game);
  return sim.outcome(adv, sim.play(adv, rng));
}

Estimate mc_estimate(const Chromosome& ch, const GameInstance& game, const AdversaryStrategy& adv,
                     std::uint64_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("oracle: samples must be positive");
  constexpr std::uint64_t kBatch = 1U << 16;
  const std::uint64_t base = rng();
  const Simulator sim(ch, game);
  const auto batches = static_cast<std::ptrdiff_t>((samples + kBatch - 1) / kBatch);
  std::vector<std::array<std::uint64_t, 3>> counts(static_cast<std::size_t>(batches));

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < batches; ++b) {
    Rng stream = derive_stream(base, static_cast<std::uint64_t>(b));
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBatch;
    const std::uint64_t end = std::min(samples, begin + kBatch);
    std::array<std::uint64_t, 3> local{};
    for (std::uint64_t i = begin; i < end; ++i) ++local[static_cast<std::size_t>(sim.play(adv, stream))];
    counts[static_cast<std::size_t>(b)] = local;
  }

  Estimate est;
  est.samples = samples;
  for (const auto& c : counts) {
    for (std::size_t k = 0; k < 3; ++k) est.terminal_counts[k] += c[k];
  }
  const auto n = static_cast<double>(samples);
  std::array<PlayoutOutcome, 3> values{};
  for (std::size_t k = 0; k < 3; ++k) values[k] = sim.outcome(adv, static_cast<Terminal>(k));
  for (std::size_t k = 0; k < 3; ++k) {
    const double w = static_cast<double>(est.terminal_counts[k]) / n;
    est.mean_def += w * values[k].defender_payoff;
    est.mean_adv += w * values[k].adversary_payoff;
  }
  if (samples > 1) {
    double ss_def = 0.0;
    double ss_adv = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto c = static_cast<double>(est.terminal_counts[k]);
      ss_def += c * std::pow(values[k].defender_payoff - est.mean_def, 2);
      ss_adv += c * std::pow(values[k].adversary_payoff - est.mean_adv, 2);
    }
    est.stderr_def = std::sqrt(ss_def / (n - 1.0) / n);
    est.stderr_adv = std::sqrt(ss_adv / (n - 1.0) / n);
  }
  return est;
}

namespace {

double z_score(double estimate, double se, double analytic) {
  // a degenerate estimate (all playouts equal) must match up to rounding
  const double floor = 1e-9 * (1.0 + std::abs(analytic));
  return std::abs(estimate - analytic) / std::max(se, floor);
}

}  // namespace

ValidationReport validate(const Chromosome& ch, const GameInstance& game, std::uint64_t samples,
                          Rng& rng, const AnalyticPayoff& analytic) {
  if (samples == 0) throw std::invalid_argument("oracle: samples must be positive");
  const std::size_t total = game.vertex_count() * kReactionSchemes;
  std::vector<std::size_t> picks(total);
  std::iota(picks.begin(), picks.end(), std::size_t{0});
  if (game.vertex_count() > 10) {
    const std::size_t want = std::min<std::size_t>(32, total);
    for (std::size_t i = 0; i < want; ++i) std::swap(picks[i], picks[i + uniform_index(rng, total - i)]);
    picks.resize(want);
    std::sort(picks.begin(), picks.end());
  }

  ValidationReport report;
  report.samples_per_comparison = samples;
  for (std::size_t id : picks) {
    const auto adv = AdversaryStrategy::from_scheme(static_cast<Vertex>(id / kReactionSchemes),
                                                    static_cast<unsigned>(id % kReactionSchemes));
    const Payoff exact = analytic(ch, game, adv);
    const Estimate est = mc_estimate(ch, game, adv, samples, rng);
    report.max_abs_z = std::max({report.max_abs_z, z_score(est.mean_def, est.stderr_def, exact.defender),
                                 z_score(est.mean_adv, est.stderr_adv, exact.adversary)});
    ++report.comparisons;
  }
  report.pass = report.max_abs_z <= kZThreshold;
  return report;
}

std::string report_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["pass"] = report.pass;
  doc["max_abs_z"] = report.max_abs_z;
  doc["comparisons"] = report.comparisons;
  doc["samples_per_comparison"] = report.samples_per_comparison;
  return doc.dump(2) + "\n";
}

}  // namespace sgs::oracle
