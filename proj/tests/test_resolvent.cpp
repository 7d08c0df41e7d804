#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pswitch/fd_solver.hpp"
#include "pswitch/grid.hpp"
#include "pswitch/model.hpp"
#include "pswitch/quadrature.hpp"
#include "pswitch/resolvent.hpp"

using namespace pswitch;

namespace {

ModelSpec battery(double g12, double g21) {
  ModelSpec m;
  m.drift = 0.05;
  m.sigma = 0.3;
  m.a1 = 1.0;
  m.lambda = 0.3;
  m.g12 = g12;
  m.g21 = g21;
  m.profit1 = ProfitSpec::zero();
  m.profit2 = ProfitSpec::saturating(1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("resolvent_point reproduces the discounted moment formulas") {
  const double q = 1.3, b = 0.05, sigma = 0.3;
  const QuadratureScheme s = build_scheme(q, b, sigma);
  for (const double x : {0.02, 0.5, 1.0, 30.0}) {
    CHECK(resolvent_point(s, [](double) { return 1.0; }, x) ==
          doctest::Approx(1.0 / q).epsilon(1e-9));
    CHECK(resolvent_point(s, [](double y) { return y; }, x) ==
          doctest::Approx(x / (q - b)).epsilon(1e-9));
    CHECK(resolvent_point(s, [](double y) { return y * y; }, x) ==
          doctest::Approx(x * x / (q - 2.0 * b - sigma * sigma)).epsilon(1e-8));
  }
  CHECK_THROWS(resolvent_point(s, [](double) { return 1.0; }, 0.0));
}

TEST_CASE("grid application matches the pointwise operator") {
  const ModelSpec m = battery(1.5, 0.1);
  const Grid grid = build_grid(m, 0.01, 100.0, 601);
  const QuadratureScheme s = build_scheme(m.a1 + m.lambda, m.drift, m.sigma);
  const GridResolvent op(grid, s);

  CHECK(op.row_sum() == doctest::Approx(s.total_weight()).epsilon(1e-12));

  // Linear data pass through interpolation unchanged, so grid and pointwise
  // answers agree to roundoff.
  std::vector<double> f(grid.n()), out;
  for (std::size_t k = 0; k < grid.n(); ++k) f[k] = 2.0 * grid.x[k] + 0.7;
  op.apply(f, out);
  for (const std::size_t k : {0u, 150u, 300u, 450u, 600u}) {
    const double ref = 2.0 * grid.x[k] / (s.q - m.drift) + 0.7 / s.q;
    CHECK(out[k] == doctest::Approx(ref).epsilon(1e-9));
  }

  // Curved data picks up only the interpolation error.
  for (std::size_t k = 0; k < grid.n(); ++k)
    f[k] = grid.x[k] / (1.0 + grid.x[k]);
  op.apply(f, out);
  for (const std::size_t k : {100u, 300u, 500u}) {
    const double ref = resolvent_point(
        s, [](double y) { return y / (1.0 + y); }, grid.x[k]);
    CHECK(out[k] == doctest::Approx(ref).epsilon(2e-4));
  }
}

TEST_CASE("value iteration fixed point matches the decoupled closed form") {
  // Prohibitive costs: the max term stays at v_i itself and the fixed point
  // is v_i = R_{a1}[h_i]. With a linear profit that is c x/(a1 - b).
  ModelSpec m = battery(50.0, 1.0);
  m.profit2 = ProfitSpec::linear(0.4);
  const Grid grid = build_grid(m, 0.01, 100.0, 301);
  const ValueSolution sol = solve_by_value_iteration(m, grid);
  REQUIRE(sol.converged);
  CHECK(sol.method == "resolvent");
  const double slope = 0.4 / (m.a1 - m.drift);
  for (const std::size_t k : {15u, 75u, 150u, 285u}) {
    CHECK(std::fabs(sol.v1[k]) <= 1e-7 * (1.0 + grid.x[k]));
    CHECK(sol.v2[k] ==
          doctest::Approx(slope * grid.x[k]).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("large costs keep every switching indicator off") {
  const ModelSpec m = battery(1.5, 0.1);
  const Grid grid = build_grid(m, 0.01, 100.0, 201);
  const ValueSolution sol = solve_by_value_iteration(m, grid);
  REQUIRE(sol.converged);
  for (std::size_t k = 0; k < grid.n(); ++k) {
    CHECK(sol.switch1[k] == 0);
    CHECK(sol.switch2[k] == 0);
  }
}

TEST_CASE("fixed point is start independent") {
  const ModelSpec m = battery(0.4, -0.2);
  const Grid grid = build_grid(m, 0.01, 100.0, 201);

  IterationOptions cold;
  cold.tol = 1e-10;
  const ValueSolution a = solve_by_value_iteration(m, grid, cold);
  REQUIRE(a.converged);

  const ValueSolution fd = solve_penalized_system(m, grid);
  REQUIRE(fd.converged);
  IterationOptions warm;
  warm.tol = 1e-10;
  warm.init = &fd;
  const ValueSolution b = solve_by_value_iteration(m, grid, warm);
  REQUIRE(b.converged);
  CHECK(b.iterations <= a.iterations);

  double sup = 0.0;
  for (std::size_t k = 0; k < grid.n(); ++k)
    sup = std::max({sup, std::fabs(a.v1[k] - b.v1[k]) / (1.0 + grid.x[k]),
                    std::fabs(a.v2[k] - b.v2[k]) / (1.0 + grid.x[k])});
  CHECK(sup < 1e-9);
}

TEST_CASE("sweep changes contract geometrically") {
  const ModelSpec m = battery(0.4, -0.2);
  const Grid grid = build_grid(m, 0.01, 100.0, 201);
  std::vector<double> log;
  IterationOptions opt;
  opt.change_log = &log;
  const ValueSolution sol = solve_by_value_iteration(m, grid, opt);
  REQUIRE(sol.converged);
  REQUIRE(log.size() >= 6);
  // Boundary-concentrated changes can beat the asymptotic rate for a sweep
  // or two, so the envelope holds over a window rather than per sweep.
  const double rate =
      1.05 * m.lambda / (m.a1 + m.lambda - std::max(m.drift, 0.0));
  const double cap5 = 1.5 * rate * rate * rate * rate * rate;
  for (std::size_t i = 5; i < log.size(); ++i)
    CHECK(log[i] <= cap5 * log[i - 5] + 1e-13);
}

TEST_CASE("compare_solutions windows the interior and scales by 1 + x") {
  const ModelSpec m = battery(1.5, 0.1);
  const Grid grid = build_grid(m, 0.01, 100.0, 200);
  ValueSolution a, b;
  a.grid = b.grid = grid;
  a.v1.assign(200, 0.0);
  a.v2.assign(200, 0.0);
  b.v1 = a.v1;
  b.v2 = a.v2;
  // Differences planted outside the window must not count.
  b.v1[0] = 100.0;
  b.v1[199] = 100.0;
  b.v1[100] = 0.25;   // counts: sup1 = 0.25
  b.v2[50] = -0.1;    // counts: sup2 = 0.1
  const SolutionComparison c = compare_solutions(a, b);
  CHECK(c.first_node == 10);
  CHECK(c.last_node == 189);
  CHECK(c.sup1 == doctest::Approx(0.25));
  CHECK(c.sup2 == doctest::Approx(0.1));
  CHECK(c.sup_scaled ==
        doctest::Approx(0.25 / (1.0 + grid.x[100])).epsilon(1e-12));
  CHECK(c.mean1 == doctest::Approx(0.25 / 180.0).epsilon(1e-12));

  ValueSolution other;
  other.grid = build_grid(m, 0.02, 100.0, 200);
  other.v1 = a.v1;
  other.v2 = a.v2;
  CHECK_THROWS(compare_solutions(a, other));
}

TEST_CASE("the two solvers agree on every battery preset") {
  for (const auto& [g12, g21] :
       {std::pair{1.5, 0.1}, {1.5, -0.5}, {1.5, -1.3}, {0.4, 0.2}, {0.4, -0.2}}) {
    const ModelSpec m = battery(g12, g21);
    const Grid grid = build_grid(m, 0.01, 100.0, 401);
    const ValueSolution fd = solve_penalized_system(m, grid);
    const ValueSolution vi = solve_by_value_iteration(m, grid);
    REQUIRE(fd.converged);
    REQUIRE(vi.converged);
    const SolutionComparison c = compare_solutions(fd, vi);
    CHECK(c.sup_scaled < 2e-3);
  }
}
