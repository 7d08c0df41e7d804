#pragma once
// Shared constants for the exp kernels. Both the scalar reference and the
// AVX2 variant evaluate the same degree-13 Taylor polynomial after Cody-Waite
// range reduction, in the same fma order, so their results agree bitwise.

#include <cmath>
#include <cstdint>

namespace pswitch::kernels::detail {

inline constexpr double kLog2E = 1.4426950408889634074;     // 1/ln 2
inline constexpr double kLn2Hi = 6.93147180369123816490e-1; // high bits of ln 2
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

// exp overflows above this input and underflows to a subnormal below its
// negative counterpart; saturate instead of producing garbage exponents.
inline constexpr double kExpHi = 709.0895657128241;
inline constexpr double kExpLo = -708.3964185322641;

// 1/n! for the Taylor polynomial, Horner order c13 .. c0.
inline constexpr double kC13 = 1.6059043836821614599e-10;
inline constexpr double kC12 = 2.0876756987868098979e-9;
inline constexpr double kC11 = 2.5052108385441718775e-8;
inline constexpr double kC10 = 2.7557319223985890653e-7;
inline constexpr double kC9 = 2.7557319223985892510e-6;
inline constexpr double kC8 = 2.4801587301587301566e-5;
inline constexpr double kC7 = 1.9841269841269841253e-4;
inline constexpr double kC6 = 1.3888888888888889419e-3;
inline constexpr double kC5 = 8.3333333333333332177e-3;
inline constexpr double kC4 = 4.1666666666666664354e-2;
inline constexpr double kC3 = 1.6666666666666665741e-1;
inline constexpr double kC2 = 5.0000000000000000000e-1;
inline constexpr double kC1 = 1.0;
inline constexpr double kC0 = 1.0;

// Scalar core, set up so the AVX2 lane-wise computation is identical.
inline double exp_scalar(double x) {
  if (std::isnan(x)) return x;
  const bool hi = x > kExpHi;
  const bool lo = x < kExpLo;
  const double xc = hi ? kExpHi : (lo ? kExpLo : x);

  const double kd = std::nearbyint(xc * kLog2E);
  double t = std::fma(kd, -kLn2Hi, xc);
  t = std::fma(kd, -kLn2Lo, t);

  double p = kC13;
  p = std::fma(p, t, kC12);
  p = std::fma(p, t, kC11);
  p = std::fma(p, t, kC10);
  p = std::fma(p, t, kC9);
  p = std::fma(p, t, kC8);
  p = std::fma(p, t, kC7);
  p = std::fma(p, t, kC6);
  p = std::fma(p, t, kC5);
  p = std::fma(p, t, kC4);
  p = std::fma(p, t, kC3);
  p = std::fma(p, t, kC2);
  p = std::fma(p, t, kC1);
  p = std::fma(p, t, kC0);

  const auto ki = static_cast<std::int64_t>(kd);
  std::uint64_t bits = static_cast<std::uint64_t>(ki + 1023) << 52;
  double scale;
  __builtin_memcpy(&scale, &bits, sizeof scale);
  double r = p * scale;
  if (hi) r = HUGE_VAL;
  if (lo) r = 0.0;
  return r;
}

}  // namespace pswitch::kernels::detail
