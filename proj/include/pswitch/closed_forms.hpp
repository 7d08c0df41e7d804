#pragma once
// Affine benchmark values available when the profit gap is linear in x.
// Used as exact fixtures against the numerical solvers.

namespace pswitch {

// Expected discounted profit of holding a linear-profit regime forever:
// c * x / (a1 - b). Requires a1 > b.
double no_switch_value(double c, double a1, double b, double x);

// Profile of the regime-1 switch indicator when switching never pays and the
// profit gap is F(x) = c * x: g12 - c * x / (a1 - b). Requires a1 > b.
double never_switch_G(double g12, double c, double a1, double b, double x);

// Solution of the regime-2 indicator equation on a region where switching is
// strictly favored, with F(x) = c * x:
//   a1 * g21 / (a1 + lambda) + c * x / (a1 + lambda - b).
// Requires a1 + lambda > b.
double case3_G2(double g21, double c, double a1, double lambda, double b,
                double x);

}  // namespace pswitch
