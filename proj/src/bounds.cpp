#include "pswitch/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace pswitch {

BoundsReport check_value_bounds(const ModelSpec& m, const ValueSolution& sol) {
  const double cl = m.profit_lipschitz();
  const double growth = cl / (m.a1 - m.drift);
  const double kappa = m.lambda / (m.a1 + m.lambda);
  const double jump1 = std::max(0.0, -m.g12);
  const double jump2 = std::max(0.0, -m.g21);

  BoundsReport r;
  const std::size_t n = sol.grid.n();
  for (std::size_t k = 0; k < n; ++k) {
    const double x = sol.grid.x[k];
    r.upper_excess = std::max(r.upper_excess, sol.v1[k] - (growth * x + jump1));
    r.upper_excess = std::max(r.upper_excess, sol.v2[k] - (growth * x + jump2));
    r.lower_deficit = std::max(r.lower_deficit, kappa * jump1 - sol.v1[k]);
    r.lower_deficit = std::max(r.lower_deficit, kappa * jump2 - sol.v2[k]);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dx = sol.grid.x[k + 1] - sol.grid.x[k];
    const double q1 = std::abs(sol.v1[k + 1] - sol.v1[k]) / dx;
    const double q2 = std::abs(sol.v2[k + 1] - sol.v2[k]) / dx;
    r.quotient_excess = std::max(r.quotient_excess, std::max(q1, q2) - growth);
  }
  return r;
}

}  // namespace pswitch
