#include "pswitch/closed_forms.hpp"

#include <stdexcept>

namespace pswitch {

double no_switch_value(double c, double a1, double b, double x) {
  if (!(a1 > b)) throw std::invalid_argument("no_switch_value: requires a1 > b");
  return c * x / (a1 - b);
}

double never_switch_G(double g12, double c, double a1, double b, double x) {
  if (!(a1 > b)) throw std::invalid_argument("never_switch_G: requires a1 > b");
  return g12 - c * x / (a1 - b);
}

double case3_G2(double g21, double c, double a1, double lambda, double b,
                double x) {
  if (!(a1 + lambda > b))
    throw std::invalid_argument("case3_G2: requires a1 + lambda > b");
  return a1 * g21 / (a1 + lambda) + c * x / (a1 + lambda - b);
}

}  // namespace pswitch
