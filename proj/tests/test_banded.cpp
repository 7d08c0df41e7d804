#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pswitch/banded.hpp"
#include "pswitch/rng.hpp"

using namespace pswitch;

namespace {

// Dense Gaussian elimination with partial pivoting, the reference solver.
std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_CASE("banded LU matches a dense solve on random band matrices") {
  const std::size_t n = 40, kl = 4, ku = 2;
  Xoshiro256pp rng(314, 0);
  BandedSystem sys(n, kl, ku);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j > i + ku || i > j + kl) continue;
      const double v = 2.0 * rng.uniform() - 1.0 + (i == j ? 6.0 : 0.0);
      sys.at(i, j) = v;
      dense[i][j] = v;
    }
  std::vector<double> rhs(n);
  for (double& v : rhs) v = 2.0 * rng.uniform() - 1.0;

  const std::vector<double> ref = dense_solve(dense, rhs);
  sys.solve(rhs);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(rhs[i] == doctest::Approx(ref[i]).epsilon(1e-11).scale(1.0));
}

TEST_CASE("pivoting handles a zero diagonal") {
  // [0 1; 1 0] x = [2; 3] has the solution (3, 2) but a zero pivot up front.
  BandedSystem sys(2, 1, 1);
  sys.at(0, 1) = 1.0;
  sys.at(1, 0) = 1.0;
  std::vector<double> rhs = {2.0, 3.0};
  sys.solve(rhs);
  CHECK(rhs[0] == doctest::Approx(3.0));
  CHECK(rhs[1] == doctest::Approx(2.0));
}

TEST_CASE("interleaved two-variable coupling pattern round-trips") {
  // The value system stores (v1_k, v2_k) interleaved; kl = 4, ku = 2 reaches
  // the one-sided closure taps. Build such a matrix, apply it to a known
  // vector and recover it.
  const std::size_t nodes = 16, n = 2 * nodes, kl = 4, ku = 2;
  BandedSystem sys(n, kl, ku);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  auto put = [&](std::size_t i, std::size_t j, double v) {
    sys.at(i, j) = v;
    dense[i][j] = v;
  };
  for (std::size_t k = 0; k < nodes; ++k)
    for (int r = 0; r < 2; ++r) {
      const std::size_t row = 2 * k + r;
      put(row, row, 5.0 + 0.1 * static_cast<double>(row));
      put(row, row % 2 == 0 ? row + 1 : row - 1, -0.5);  // regime coupling
      if (k > 0) put(row, row - 2, -1.0);
      if (k + 1 < nodes) put(row, row + 2, -1.0);
      if (row >= 4) put(row, row - 4, 0.25);  // second left tap
    }
  Xoshiro256pp rng(99, 0);
  std::vector<double> x_true(n), rhs(n, 0.0);
  for (double& v : x_true) v = 2.0 * rng.uniform() - 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rhs[i] += dense[i][j] * x_true[j];
  sys.solve(rhs);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(rhs[i] == doctest::Approx(x_true[i]).epsilon(1e-11).scale(1.0));
}

TEST_CASE("out-of-band access is rejected and reset clears coefficients") {
  BandedSystem sys(10, 2, 1);
  CHECK_THROWS_AS(sys.at(0, 2), std::out_of_range);
  CHECK_THROWS_AS(sys.at(5, 2), std::out_of_range);
  sys.at(3, 2) = 7.0;
  CHECK(sys.get(3, 2) == 7.0);
  CHECK(sys.get(2, 3) == 0.0);
  sys.reset();
  CHECK(sys.get(3, 2) == 0.0);
}

TEST_CASE("singular matrix raises") {
  BandedSystem sys(3, 1, 1);
  // Row of zeros.
  sys.at(0, 0) = 1.0;
  sys.at(2, 2) = 1.0;
  std::vector<double> rhs = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(sys.solve(rhs), std::runtime_error);
}
