#pragma once
// Finite-difference solver for the coupled penalized value system
//
//   -L v_i + a1 v_i = lambda * max{0, v_j - g_ij - v_i} + h_i,   i = 1,2,
//   L = (sigma^2/2) x^2 d2/dx2 + drift x d/dx,
//
// on a geometric grid: nonuniform 3-point central differences, active-set
// iteration on the switching indicator (each pass freezes the indicator and
// solves the coupled 2N banded linear system), first-order accurate Dirichlet
// data at x_min from the x -> 0 degenerate limit, zero one-sided second
// difference at x_max.

#include "pswitch/model.hpp"
#include "pswitch/solution.hpp"

namespace pswitch {

struct SolverOptions {
  double tol = 1e-8;  // interior residual sup-norm target
  int max_iter = 200;
};

// Requires a validated, normalized model (h(0) = 0). Non-convergence within
// max_iter is reported through ValueSolution::converged, not thrown.
ValueSolution solve_penalized_system(const ModelSpec& model, const Grid& grid,
                                     const SolverOptions& opt = {});

// Pointwise defect of the discrete system at a candidate solution, same
// discretization as the solver. Interior nodes carry the equation defect;
// the first node the Dirichlet defect; the last node the curvature-closure
// defect.
struct Residual {
  std::vector<double> r1;
  std::vector<double> r2;
  double interior_sup = 0.0;
};
Residual residual(const ModelSpec& model, const ValueSolution& sol);

}  // namespace pswitch
