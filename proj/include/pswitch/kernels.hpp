#pragma once
// Vectorizable arithmetic kernels with a scalar reference implementation and
// an AVX2 variant selected at runtime.
//
// The scalar kernels mirror the AVX2 operation order (fma chains, same
// polynomial) so both backends produce bit-identical results; equivalence is
// enforced by tests. Selection: PSWITCH_SIMD=scalar|avx2|auto environment
// variable, force_backend(), or CPU detection, in that order of precedence.

#include <cstddef>

namespace pswitch::kernels {

enum class Backend { scalar, avx2 };

// Backend in effect. Resolved once on first use.
Backend active_backend();
const char* backend_name();

// Overrides CPU detection. Requesting avx2 on a CPU without it is an error.
// Returns the backend actually selected.
Backend force_backend(Backend b);

// Reverts to automatic selection (environment variable, then CPU detection).
void reset_backend();

bool cpu_has_avx2();

// out[i] = exp(x[i]). Domain |x[i]| <= 708; inputs beyond +-709 saturate to
// +inf / 0. Accuracy within a few ulp of the correctly rounded result.
void exp_v(const double* x, double* out, std::size_t n);

// out[i] = a * x[i].
void scale_v(double a, const double* x, double* out, std::size_t n);

// Per-segment trapezoid weights of the product d*h on the abscissae t:
//   g[j] = 0.5 * (d[j]*h[j] + d[j+1]*h[j+1]) * (t[j+1] - t[j]),  j < n_seg.
// Arrays t, d, h have n_seg+1 entries.
void trapezoid_products(const double* t, const double* d, const double* h,
                        double* g, std::size_t n_seg);

// Two-tap shifted accumulate: out[k] += w0*src[k+shift] + w1*src[k+shift+1]
// for k in [lo, hi). Caller guarantees src indices stay in bounds.
void shifted_axpy2(double* out, const double* src, std::ptrdiff_t shift,
                   double w0, double w1, std::size_t lo, std::size_t hi);

// out[i] = c * x[i] / (1 + k * x[i]).
void saturating_v(double c, double k, const double* x, double* out,
                  std::size_t n);

}  // namespace pswitch::kernels
