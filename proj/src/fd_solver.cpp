#include "pswitch/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pswitch/banded.hpp"

namespace pswitch {

std::pair<double, double> interpolate(const ValueSolution& sol, double x) {
  return {interp_on_grid(sol.grid, sol.v1, x),
          interp_on_grid(sol.grid, sol.v2, x)};
}

namespace {

// Three-point weights of -L on the nonuniform stencil around node k.
struct OperatorRow {
  double sub, diag, sup;
};

std::vector<OperatorRow> build_neg_l(const ModelSpec& m, const Grid& g) {
  const std::size_t n = g.n();
  std::vector<OperatorRow> rows(n, OperatorRow{0.0, 0.0, 0.0});
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double hm = g.x[k] - g.x[k - 1];
    const double hp = g.x[k + 1] - g.x[k];
    const double xk = g.x[k];
    const double d2s = 2.0 / (hm * (hm + hp));
    const double d2d = -2.0 / (hm * hp);
    const double d2u = 2.0 / (hp * (hm + hp));
    const double d1s = -hp / (hm * (hm + hp));
    const double d1d = (hp - hm) / (hm * hp);
    const double d1u = hm / (hp * (hm + hp));
    const double w = 0.5 * m.sigma * m.sigma * xk * xk;
    const double bx = m.drift * xk;
    rows[k].sub = -(w * d2s + bx * d1s);
    rows[k].diag = -(w * d2d + bx * d1d);
    rows[k].sup = -(w * d2u + bx * d1u);
  }
  return rows;
}

// Strict diagonal dominance of the interior scheme: off-diagonals of
// (-L + a1) must be nonpositive, leaving margin a1 on each row. Fails only
// if the mesh is too coarse for the drift (|drift| * step comparable to
// sigma^2), which is a grid-configuration error.
void check_dominance(const ModelSpec& m, const std::vector<OperatorRow>& rows) {
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
    if (rows[k].sub > 0.0 || rows[k].sup > 0.0)
      throw std::runtime_error(
          "solve_penalized_system: interior scheme lost diagonal dominance; "
          "refine the grid (drift too strong for the log step)");
    const double margin = (rows[k].diag + m.a1) -
                          (std::abs(rows[k].sub) + std::abs(rows[k].sup));
    if (!(margin > 0.9 * m.a1))
      throw std::runtime_error(
          "solve_penalized_system: diagonal dominance margin below a1");
  }
}

struct BoundaryData {
  double v1, v2;
};

BoundaryData dirichlet_data(const ModelSpec& m, const Grid& g) {
  // First-order expansion of the x -> 0 degenerate limit keeps the boundary
  // data error at O(x_min^2), below the interior truncation error.
  const OriginState st = origin_state(m);
  return {st.v1 + g.x_min() * st.dv1, st.v2 + g.x_min() * st.dv2};
}

}  // namespace

ValueSolution solve_penalized_system(const ModelSpec& m, const Grid& grid,
                                     const SolverOptions& opt) {
  if (!(m.sigma > 0.0) || !(m.lambda > 0.0) || !(m.a1 > std::max(m.drift, 0.0)))
    throw std::invalid_argument("solve_penalized_system: model not admissible");
  if (m.profit1.value0() != 0.0 || m.profit2.value0() != 0.0)
    throw std::invalid_argument("solve_penalized_system: model must be normalized");
  const std::size_t n = grid.n();
  if (n < 4) throw std::invalid_argument("solve_penalized_system: grid too small");

  const auto neg_l = build_neg_l(m, grid);
  const BoundaryData bd = dirichlet_data(m, grid);

  std::vector<double> h1(n), h2(n);
  m.profit1.eval_v(grid.x.data(), h1.data(), n);
  m.profit2.eval_v(grid.x.data(), h2.data(), n);

  const double hm_last = grid.x[n - 2] - grid.x[n - 3];
  const double hp_last = grid.x[n - 1] - grid.x[n - 2];

  ValueSolution sol;
  sol.grid = grid;
  sol.method = "fd";
  sol.v1.assign(n, 0.0);
  sol.v2.assign(n, 0.0);
  sol.switch1.assign(n, 0);
  sol.switch2.assign(n, 0);

  std::vector<std::uint8_t> act1(n, 0), act2(n, 0);
  std::vector<std::uint8_t> prev1, prev2, pp1, pp2;
  std::vector<double> prev_v1, prev_v2;

  BandedSystem sys(2 * n, 4, 2);
  std::vector<double> rhs(2 * n);

  auto derive_sets = [&](const std::vector<double>& v1,
                         const std::vector<double>& v2,
                         std::vector<std::uint8_t>& s1,
                         std::vector<std::uint8_t>& s2) {
    for (std::size_t k = 0; k < n; ++k) {
      s1[k] = v2[k] - m.g12 - v1[k] > 0.0 ? 1 : 0;
      s2[k] = v1[k] - m.g21 - v2[k] > 0.0 ? 1 : 0;
    }
  };

  check_dominance(m, neg_l);

  for (int it = 1; it <= opt.max_iter; ++it) {
    sys.reset();
    // Interleaved unknowns (v1_k at 2k, v2_k at 2k+1).
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t r1i = 2 * k, r2i = 2 * k + 1;
      if (k == 0) {
        sys.at(r1i, r1i) = 1.0;
        sys.at(r2i, r2i) = 1.0;
        rhs[r1i] = bd.v1;
        rhs[r2i] = bd.v2;
      } else if (k + 1 == n) {
        // One-sided second difference set to zero (asymptotically linear value).
        for (const std::size_t r : {r1i, r2i}) {
          sys.at(r, r) = 1.0 / hp_last;
          sys.at(r, r - 2) = -(1.0 / hp_last + 1.0 / hm_last);
          sys.at(r, r - 4) = 1.0 / hm_last;
          rhs[r] = 0.0;
        }
      } else {
        const OperatorRow& row = neg_l[k];
        sys.at(r1i, r1i - 2) = row.sub;
        sys.at(r1i, r1i + 2) = row.sup;
        sys.at(r1i, r1i) = row.diag + m.a1 + (act1[k] ? m.lambda : 0.0);
        if (act1[k]) sys.at(r1i, r2i) = -m.lambda;
        rhs[r1i] = h1[k] - (act1[k] ? m.lambda * m.g12 : 0.0);

        sys.at(r2i, r2i - 2) = row.sub;
        sys.at(r2i, r2i + 2) = row.sup;
        sys.at(r2i, r2i) = row.diag + m.a1 + (act2[k] ? m.lambda : 0.0);
        if (act2[k]) sys.at(r2i, r1i) = -m.lambda;
        rhs[r2i] = h2[k] - (act2[k] ? m.lambda * m.g21 : 0.0);
      }
    }

    sys.solve(rhs);
    prev_v1 = std::move(sol.v1);
    prev_v2 = std::move(sol.v2);
    sol.v1.resize(n);
    sol.v2.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      sol.v1[k] = rhs[2 * k];
      sol.v2[k] = rhs[2 * k + 1];
    }
    sol.iterations = it;

    std::vector<std::uint8_t> new1(n), new2(n);
    derive_sets(sol.v1, sol.v2, new1, new2);

    if (it > 1 && new1 == act1 && new2 == act2) {
      sol.converged = true;
      break;
    }
    if (it > 2 && new1 == pp1 && new2 == pp2) {
      // Two-cycle between indicator patterns: damp the iterate and re-derive.
      for (std::size_t k = 0; k < n; ++k) {
        sol.v1[k] = 0.5 * (sol.v1[k] + prev_v1[k]);
        sol.v2[k] = 0.5 * (sol.v2[k] + prev_v2[k]);
      }
      derive_sets(sol.v1, sol.v2, new1, new2);
    }
    pp1 = std::move(prev1);
    pp2 = std::move(prev2);
    prev1 = act1;
    prev2 = act2;
    act1 = std::move(new1);
    act2 = std::move(new2);
  }

  derive_sets(sol.v1, sol.v2, sol.switch1, sol.switch2);
  sol.residual_sup = residual(m, sol).interior_sup;
  if (sol.converged && !(sol.residual_sup <= opt.tol)) sol.converged = false;
  return sol;
}

Residual residual(const ModelSpec& m, const ValueSolution& sol) {
  const Grid& g = sol.grid;
  const std::size_t n = g.n();
  if (sol.v1.size() != n || sol.v2.size() != n)
    throw std::invalid_argument("residual: solution arrays do not match grid");

  const auto neg_l = build_neg_l(m, g);
  const BoundaryData bd = dirichlet_data(m, g);

  Residual res;
  res.r1.assign(n, 0.0);
  res.r2.assign(n, 0.0);

  res.r1[0] = sol.v1[0] - bd.v1;
  res.r2[0] = sol.v2[0] - bd.v2;
  const double hm_last = g.x[n - 2] - g.x[n - 3];
  const double hp_last = g.x[n - 1] - g.x[n - 2];
  res.r1[n - 1] = (sol.v1[n - 1] - sol.v1[n - 2]) / hp_last -
                  (sol.v1[n - 2] - sol.v1[n - 3]) / hm_last;
  res.r2[n - 1] = (sol.v2[n - 1] - sol.v2[n - 2]) / hp_last -
                  (sol.v2[n - 2] - sol.v2[n - 3]) / hm_last;

  for (std::size_t k = 1; k + 1 < n; ++k) {
    const OperatorRow& row = neg_l[k];
    const double lv1 =
        row.sub * sol.v1[k - 1] + row.diag * sol.v1[k] + row.sup * sol.v1[k + 1];
    const double lv2 =
        row.sub * sol.v2[k - 1] + row.diag * sol.v2[k] + row.sup * sol.v2[k + 1];
    const double gain1 = std::max(0.0, sol.v2[k] - m.g12 - sol.v1[k]);
    const double gain2 = std::max(0.0, sol.v1[k] - m.g21 - sol.v2[k]);
    res.r1[k] = lv1 + m.a1 * sol.v1[k] - m.lambda * gain1 - m.profit1(g.x[k]);
    res.r2[k] = lv2 + m.a1 * sol.v2[k] - m.lambda * gain2 - m.profit2(g.x[k]);
    res.interior_sup = std::max(
        res.interior_sup, std::max(std::abs(res.r1[k]), std::abs(res.r2[k])));
  }
  return res;
}

}  // namespace pswitch
