#include "pswitch/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pswitch {

BandedSystem::BandedSystem(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ab_((2 * kl + ku + 1) * n, 0.0) {
  if (n == 0 || kl >= n || ku >= n)
    throw std::invalid_argument("BandedSystem: bad shape");
}

double& BandedSystem::at(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || (j > i && j - i > ku_) || (i > j && i - j > kl_))
    throw std::out_of_range("BandedSystem::at outside band");
  return ab(kl_ + ku_ + i - j, j);
}

double BandedSystem::get(std::size_t i, std::size_t j) const {
  return ab_[(kl_ + ku_ + i - j) * n_ + j];
}

void BandedSystem::reset() { std::fill(ab_.begin(), ab_.end(), 0.0); }

void BandedSystem::solve(std::vector<double>& rhs) {
  if (rhs.size() != n_) throw std::invalid_argument("BandedSystem::solve: rhs size");
  const std::size_t kv = kl_ + ku_;  // band row of the diagonal
  std::vector<std::size_t> ipiv(n_);

  // Band LU with partial pivoting; fill stays within kl + ku superdiagonals.
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t pmax = std::min(j + kl_, n_ - 1);
    std::size_t p = j;
    double best = std::abs(ab(kv + j - j, j));
    for (std::size_t i = j + 1; i <= pmax; ++i) {
      const double v = std::abs(ab(kv + i - j, j));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    ipiv[j] = p;
    if (!(best > 0.0) || !std::isfinite(best))
      throw std::runtime_error("BandedSystem::solve: singular matrix");

    const std::size_t cmax = std::min(j + kv, n_ - 1);
    if (p != j) {
      for (std::size_t c = j; c <= cmax; ++c)
        std::swap(ab(kv + j - c, c), ab(kv + p - c, c));
      std::swap(rhs[j], rhs[p]);
    }

    const double piv = ab(kv, j);
    for (std::size_t i = j + 1; i <= pmax; ++i) {
      const double m = ab(kv + i - j, j) / piv;
      ab(kv + i - j, j) = m;
      if (m == 0.0) continue;
      for (std::size_t c = j + 1; c <= cmax; ++c)
        ab(kv + i - c, c) -= m * ab(kv + j - c, c);
      rhs[i] -= m * rhs[j];
    }
  }

  // Back substitution on U (bandwidth kl + ku).
  for (std::size_t jj = n_; jj-- > 0;) {
    const std::size_t cmax = std::min(jj + kv, n_ - 1);
    double s = rhs[jj];
    for (std::size_t c = jj + 1; c <= cmax; ++c) s -= ab(kv + jj - c, c) * rhs[c];
    rhs[jj] = s / ab(kv, jj);
  }
}

}  // namespace pswitch
