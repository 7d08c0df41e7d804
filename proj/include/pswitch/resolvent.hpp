#pragma once
// Quadrature resolvent of the driving diffusion and the arrival-recursion
// value iteration built on it. Deliberately shares no discretization code
// with the finite-difference solver so the two can cross-check each other.

#include <cstddef>
#include <functional>
#include <vector>

#include "pswitch/grid.hpp"
#include "pswitch/model.hpp"
#include "pswitch/quadrature.hpp"
#include "pswitch/solution.hpp"

namespace pswitch {

// E[ integral_0^inf e^{-q s} phi(X_s^x) ds ] for geometric Brownian X.
double resolvent_point(const QuadratureScheme& scheme,
                       const std::function<double(double)>& phi, double x);

// The same operator restricted to functions sampled on a geometric grid,
// extended off-grid by the shared piecewise-linear rule (interp_on_grid).
// On a log-uniform mesh every quadrature factor lands at a fixed nodal
// offset, so one application is a sequence of two-tap shifted accumulations
// plus closed-form corrections for the mass that falls outside the grid.
class GridResolvent {
 public:
  GridResolvent(const Grid& grid, const QuadratureScheme& scheme);

  // out[k] = resolvent of the interpolant of f at node k. out is resized.
  void apply(const std::vector<double>& f, std::vector<double>& out) const;

  double row_sum() const { return row_sum_; }  // acting on f == 1

 private:
  struct Tap {
    std::ptrdiff_t shift;
    double w0, w1;
  };
  const Grid* grid_;
  std::vector<Tap> taps_;
  // Affine coefficients per node for taps falling left/right of the grid:
  // contribution = w * extension_intercept + wx * x_k * extension_slope.
  std::vector<double> left_w_, left_wx_, right_w_, right_wx_;
  double row_sum_ = 0.0;
};

struct IterationOptions {
  double tol = 1e-9;
  int max_iter = 500;
  QuadratureOptions quad{};
  const ValueSolution* init = nullptr;  // warm start on the same grid
  std::vector<double>* change_log = nullptr;  // sup-change per sweep
};

// Fixed point of v_i = R_{a1+lambda}[ h_i + lambda * max{v_i, v_j - g_ij} ],
// iterated on the grid. Sup changes decay asymptotically at
// kappa = lambda/(a1+lambda-b+), with short transient excursions when a
// change concentrates at the truncation boundary; stops when the sup-change
// times kappa/(1-kappa) falls below tol. Throws if the changes stop decaying
// geometrically over a several-sweep window (operator defect).
ValueSolution solve_by_value_iteration(const ModelSpec& model, const Grid& grid,
                                       const IterationOptions& opt = {});

struct SolutionComparison {
  double sup1 = 0.0, sup2 = 0.0;    // sup |a - b| per regime
  double mean1 = 0.0, mean2 = 0.0;  // mean |a - b| per regime
  double sup_scaled = 0.0;          // sup over both regimes of |a-b|/(1+x)
  std::size_t first_node = 0, last_node = 0;  // inclusive window compared
};

// Nodewise comparison on the interior, excluding the outer 5% of nodes on
// each side where the two methods' boundary closures differ by design.
SolutionComparison compare_solutions(const ValueSolution& a,
                                     const ValueSolution& b);

}  // namespace pswitch
