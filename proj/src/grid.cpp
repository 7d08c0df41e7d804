#include "pswitch/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace pswitch {

std::size_t Grid::locate(double xq) const {
  const double t = (std::log(xq) - std::log(x.front())) / log_step;
  auto k = static_cast<std::ptrdiff_t>(std::floor(t));
  if (k < 0) k = 0;
  const auto last_seg = static_cast<std::ptrdiff_t>(x.size()) - 2;
  if (k > last_seg) k = last_seg;
  // Guard against log rounding at segment edges.
  while (k > 0 && x[k] > xq) --k;
  while (k < last_seg && x[k + 1] <= xq) ++k;
  return static_cast<std::size_t>(k);
}

Grid build_grid(const ModelSpec& model, double x_min, double x_max,
                std::size_t n) {
  if (!(x_min > 0.0) || !(x_max > x_min))
    throw std::invalid_argument("build_grid: need 0 < x_min < x_max");
  if (!(x_min < model.x0 && model.x0 < x_max))
    throw std::invalid_argument("build_grid: x0 must lie strictly inside the grid");
  if (n < 64) throw std::invalid_argument("build_grid: need at least 64 nodes");
  if (!(x_max / x_min >= 1e3))
    throw std::invalid_argument("build_grid: need x_max / x_min >= 1e3");

  Grid g;
  g.x.resize(n);
  const double l0 = std::log(x_min);
  const double l1 = std::log(x_max);
  g.log_step = (l1 - l0) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    g.x[k] = std::exp(l0 + g.log_step * static_cast<double>(k));
  g.x.front() = x_min;
  g.x.back() = x_max;
  return g;
}

double interp_on_grid(const Grid& grid, const std::vector<double>& f,
                      double xq) {
  if (!(xq > 0.0))
    throw std::domain_error("interp_on_grid: query must be positive");
  if (f.size() != grid.n())
    throw std::invalid_argument("interp_on_grid: value array does not match grid");
  const std::size_t k = grid.locate(xq);
  const double t = (xq - grid.x[k]) / (grid.x[k + 1] - grid.x[k]);
  return f[k] + t * (f[k + 1] - f[k]);
}

}  // namespace pswitch
