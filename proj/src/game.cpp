#include "sgs/game.hpp"

#include <cmath>
#include <string>

namespace sgs {

UncertaintyMatrix uncertainty_matrix(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw std::domain_error("kappa must lie in [0, 1], got " + std::to_string(kappa));
  }
  UncertaintyMatrix m;
  m.p = {{{1.0, kappa, kappa / 2.0}, {0.0, 1.0 - kappa, kappa / 2.0}, {0.0, 0.0, 1.0 - kappa}}};
  return m;
}

void GameInstance::validate() const {
  const std::size_t n = vertex_count();
  if (n == 0) throw ValidationError("num_vertices: must be positive");
  if (utilities.size() != n) {
    throw ValidationError("utilities: expected " + std::to_string(n) + " entries, got " +
                          std::to_string(utilities.size()));
  }
  for (std::size_t v = 0; v < n; ++v) {
    const auto& u = utilities[v];
    const std::string where = "utilities[" + std::to_string(v) + "].";
    if (!(u.def_caught > 0.0)) throw ValidationError(where + "def_caught: must be > 0");
    if (!(u.def_attacked < 0.0)) throw ValidationError(where + "def_attacked: must be < 0");
    if (!(u.adv_success > 0.0)) throw ValidationError(where + "adv_success: must be > 0");
    if (!(u.adv_caught < 0.0)) throw ValidationError(where + "adv_caught: must be < 0");
  }
  if (num_patrollers < 1) throw ValidationError("num_patrollers: must be >= 1");
  if (num_sensors < 0) throw ValidationError("num_sensors: must be >= 0");
  if (static_cast<std::size_t>(num_patrollers + num_sensors) > n) {
    throw ValidationError("num_patrollers + num_sensors: exceeds num_vertices (" +
                          std::to_string(num_patrollers + num_sensors) + " > " +
                          std::to_string(n) + ")");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma: must lie in [0, 1]");
  for (std::size_t col = 0; col < 3; ++col) {
    double sum = 0.0;
    for (std::size_t row = 0; row < 3; ++row) {
      const double x = pi.p[row][col];
      if (!(x >= 0.0 && x <= 1.0)) {
        throw ValidationError("pi[" + std::to_string(row) + "][" + std::to_string(col) +
                              "]: must lie in [0, 1]");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError("pi: column " + std::to_string(col) + " sums to " +
                            std::to_string(sum) + ", expected 1");
    }
  }
}

}  // namespace sgs
