#include "pswitch/rng.hpp"

#include <cmath>

namespace pswitch {

std::array<double, 2> Xoshiro256pp::normal_pair() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

double Xoshiro256pp::exponential(double rate) {
  return -std::log(uniform_pos()) / rate;
}

void fill_normals(Xoshiro256pp& rng, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const auto z = rng.normal_pair();
    out[i] = z[0];
    out[i + 1] = z[1];
  }
  if (i < n) out[i] = rng.normal_pair()[0];
}

}  // namespace pswitch
