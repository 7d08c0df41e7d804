#pragma once
// Value pair on a grid, produced by either solver backend.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pswitch/grid.hpp"

namespace pswitch {

struct ValueSolution {
  Grid grid;
  std::vector<double> v1;
  std::vector<double> v2;
  // Nodes where switching strictly improves: v_j - g_ij - v_i > 0.
  std::vector<std::uint8_t> switch1;
  std::vector<std::uint8_t> switch2;
  int iterations = 0;
  double residual_sup = 0.0;  // interior sup of the discrete defect
  bool converged = false;
  std::string method;  // "fd" or "resolvent"
};

// Piecewise-linear interpolation of both values; linear continuation beyond
// the grid ends. Throws std::domain_error for x <= 0.
std::pair<double, double> interpolate(const ValueSolution& sol, double x);

}  // namespace pswitch
