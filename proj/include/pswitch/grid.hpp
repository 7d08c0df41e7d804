#pragma once
// Geometric space grid (uniform in ln x) and piecewise-linear interpolation.

#include <cstddef>
#include <vector>

#include "pswitch/model.hpp"

namespace pswitch {

struct Grid {
  std::vector<double> x;
  double log_step = 0.0;  // ln(x[k+1] / x[k]), constant across the grid

  std::size_t n() const { return x.size(); }
  double x_min() const { return x.front(); }
  double x_max() const { return x.back(); }

  // Largest k with x[k] <= xq, clamped to [0, n-2]; O(1) via the log spacing.
  std::size_t locate(double xq) const;

  bool operator==(const Grid&) const = default;
};

// Geometric nodes covering [x_min, x_max]. Requires 0 < x_min < x0 < x_max,
// n >= 64 and x_max / x_min >= 1e3 (resolution floor for the boundary
// treatment). Throws std::invalid_argument otherwise.
Grid build_grid(const ModelSpec& model, double x_min, double x_max,
                std::size_t n);

// Piecewise-linear in x; beyond the ends, linear continuation of the boundary
// segment. Throws std::domain_error for xq <= 0.
double interp_on_grid(const Grid& grid, const std::vector<double>& f,
                      double xq);

}  // namespace pswitch
