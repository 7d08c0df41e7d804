// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only dispatched to
// when the CPU reports both. Lane arithmetic matches the scalar reference
// operation for operation, so results are bit-identical.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "exp_core.hpp"

namespace pswitch::kernels::avx2_impl {

namespace {

using detail::kC0;
using detail::kC1;
using detail::kC10;
using detail::kC11;
using detail::kC12;
using detail::kC13;
using detail::kC2;
using detail::kC3;
using detail::kC4;
using detail::kC5;
using detail::kC6;
using detail::kC7;
using detail::kC8;
using detail::kC9;

inline __m256d exp4(__m256d x) {
  const __m256d vhi = _mm256_set1_pd(detail::kExpHi);
  const __m256d vlo = _mm256_set1_pd(detail::kExpLo);
  const __m256d nan_mask = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  const __m256d hi_mask = _mm256_cmp_pd(x, vhi, _CMP_GT_OQ);
  const __m256d lo_mask = _mm256_cmp_pd(x, vlo, _CMP_LT_OQ);
  __m256d xc = _mm256_min_pd(_mm256_max_pd(x, vlo), vhi);

  const __m256d kd = _mm256_round_pd(
      _mm256_mul_pd(xc, _mm256_set1_pd(detail::kLog2E)),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d t = _mm256_fmadd_pd(kd, _mm256_set1_pd(-detail::kLn2Hi), xc);
  t = _mm256_fmadd_pd(kd, _mm256_set1_pd(-detail::kLn2Lo), t);

  __m256d p = _mm256_set1_pd(kC13);
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC12));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC11));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC10));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC9));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC8));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC7));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC6));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC5));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC4));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC3));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC2));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC1));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(kC0));

  // 2^k via exponent-field construction; k is integral and within [-1022,1023].
  const __m128i k32 = _mm256_cvtpd_epi32(kd);
  const __m256i k64 = _mm256_cvtepi32_epi64(k32);
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  const __m256d scale = _mm256_castsi256_pd(bits);

  __m256d r = _mm256_mul_pd(p, scale);
  r = _mm256_blendv_pd(r, _mm256_set1_pd(HUGE_VAL), hi_mask);
  r = _mm256_blendv_pd(r, _mm256_setzero_pd(), lo_mask);
  r = _mm256_blendv_pd(r, x, nan_mask);
  return r;
}

}  // namespace

void exp_v(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = detail::exp_scalar(x[i]);
}

void scale_v(double a, const double* x, double* out, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = a * x[i];
}

void trapezoid_products(const double* t, const double* d, const double* h,
                        double* g, std::size_t n_seg) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t j = 0;
  for (; j + 4 <= n_seg; j += 4) {
    const __m256d f0 = _mm256_mul_pd(_mm256_loadu_pd(d + j),
                                     _mm256_loadu_pd(h + j));
    const __m256d f1 = _mm256_mul_pd(_mm256_loadu_pd(d + j + 1),
                                     _mm256_loadu_pd(h + j + 1));
    const __m256d dt = _mm256_sub_pd(_mm256_loadu_pd(t + j + 1),
                                     _mm256_loadu_pd(t + j));
    const __m256d s = _mm256_mul_pd(half, _mm256_add_pd(f0, f1));
    _mm256_storeu_pd(g + j, _mm256_mul_pd(s, dt));
  }
  for (; j < n_seg; ++j) {
    const double f0 = d[j] * h[j];
    const double f1 = d[j + 1] * h[j + 1];
    g[j] = 0.5 * (f0 + f1) * (t[j + 1] - t[j]);
  }
}

void shifted_axpy2(double* out, const double* src, std::ptrdiff_t shift,
                   double w0, double w1, std::size_t lo, std::size_t hi) {
  const double* s = src + shift;
  const __m256d w0v = _mm256_set1_pd(w0);
  const __m256d w1v = _mm256_set1_pd(w1);
  std::size_t k = lo;
  for (; k + 4 <= hi; k += 4) {
    const __m256d acc = _mm256_fmadd_pd(
        w0v, _mm256_loadu_pd(s + k),
        _mm256_mul_pd(w1v, _mm256_loadu_pd(s + k + 1)));
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_loadu_pd(out + k), acc));
  }
  for (; k < hi; ++k) out[k] += __builtin_fma(w0, s[k], w1 * s[k + 1]);
}

void saturating_v(double c, double k, const double* x, double* out,
                  std::size_t n) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d kv = _mm256_set1_pd(k);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d num = _mm256_mul_pd(cv, xv);
    const __m256d den = _mm256_fmadd_pd(kv, xv, one);
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) {
    const double cx = c * x[i];
    out[i] = cx / __builtin_fma(k, x[i], 1.0);
  }
}

}  // namespace pswitch::kernels::avx2_impl
