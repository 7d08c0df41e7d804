#pragma once
// Banded linear solver with partial pivoting (band LU, LAPACK-style storage).
// The coupled value system is strictly diagonally dominant on interior rows
// but its x_max closure row is not, so pivoting is required for robustness.

#include <cstddef>
#include <vector>

namespace pswitch {

class BandedSystem {
 public:
  // n unknowns, kl sub- and ku superdiagonals. Factorization fill extends the
  // upper band to ku + kl; storage is allocated accordingly.
  BandedSystem(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const { return n_; }

  // Entry (i, j); only positions with j - i <= ku and i - j <= kl are
  // addressable. Zero-initialized.
  double& at(std::size_t i, std::size_t j);
  double get(std::size_t i, std::size_t j) const;

  void reset();  // zero all coefficients, keep the shape

  // Factors in place and solves for rhs (overwritten with the solution).
  // Throws std::runtime_error on a numerically singular pivot.
  void solve(std::vector<double>& rhs);

 private:
  double& ab(std::size_t band_row, std::size_t col) {
    return ab_[band_row * n_ + col];
  }

  std::size_t n_, kl_, ku_;
  std::vector<double> ab_;  // (2kl + ku + 1) rows, band row kl+ku+i-j
};

}  // namespace pswitch
