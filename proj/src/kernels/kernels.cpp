// Scalar reference kernels and runtime backend dispatch.

#include "pswitch/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "exp_core.hpp"

namespace pswitch::kernels {

namespace scalar_impl {

void exp_v(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::exp_scalar(x[i]);
}

void scale_v(double a, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i];
}

void trapezoid_products(const double* t, const double* d, const double* h,
                        double* g, std::size_t n_seg) {
  for (std::size_t j = 0; j < n_seg; ++j) {
    const double f0 = d[j] * h[j];
    const double f1 = d[j + 1] * h[j + 1];
    g[j] = 0.5 * (f0 + f1) * (t[j + 1] - t[j]);
  }
}

void shifted_axpy2(double* out, const double* src, std::ptrdiff_t shift,
                   double w0, double w1, std::size_t lo, std::size_t hi) {
  const double* s = src + shift;
  for (std::size_t k = lo; k < hi; ++k)
    out[k] += std::fma(w0, s[k], w1 * s[k + 1]);
}

void saturating_v(double c, double k, const double* x, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = c * x[i];
    out[i] = cx / std::fma(k, x[i], 1.0);
  }
}

}  // namespace scalar_impl

#if defined(PSWITCH_HAVE_AVX2)
namespace avx2_impl {
void exp_v(const double*, double*, std::size_t);
void scale_v(double, const double*, double*, std::size_t);
void trapezoid_products(const double*, const double*, const double*, double*,
                        std::size_t);
void shifted_axpy2(double*, const double*, std::ptrdiff_t, double, double,
                   std::size_t, std::size_t);
void saturating_v(double, double, const double*, double*, std::size_t);
}  // namespace avx2_impl
#endif

namespace {

struct KernelTable {
  void (*exp_v)(const double*, double*, std::size_t);
  void (*scale_v)(double, const double*, double*, std::size_t);
  void (*trapezoid_products)(const double*, const double*, const double*,
                             double*, std::size_t);
  void (*shifted_axpy2)(double*, const double*, std::ptrdiff_t, double, double,
                        std::size_t, std::size_t);
  void (*saturating_v)(double, double, const double*, double*, std::size_t);
};

constexpr KernelTable kScalarTable = {
    scalar_impl::exp_v, scalar_impl::scale_v, scalar_impl::trapezoid_products,
    scalar_impl::shifted_axpy2, scalar_impl::saturating_v};

#if defined(PSWITCH_HAVE_AVX2)
constexpr KernelTable kAvx2Table = {
    avx2_impl::exp_v, avx2_impl::scale_v, avx2_impl::trapezoid_products,
    avx2_impl::shifted_axpy2, avx2_impl::saturating_v};
#endif

Backend g_backend = Backend::scalar;
const KernelTable* g_table = nullptr;

Backend detect_backend() {
  if (const char* env = std::getenv("PSWITCH_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2") {
      if (!cpu_has_avx2())
        throw std::runtime_error("PSWITCH_SIMD=avx2 but CPU lacks AVX2+FMA");
      return Backend::avx2;
    }
    // anything else (incl. "auto") falls through to detection
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

void apply(Backend b) {
  g_backend = b;
#if defined(PSWITCH_HAVE_AVX2)
  g_table = (b == Backend::avx2) ? &kAvx2Table : &kScalarTable;
#else
  g_table = &kScalarTable;
#endif
}

const KernelTable& table() {
  if (!g_table) apply(detect_backend());
  return *g_table;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(PSWITCH_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() {
  table();
  return g_backend;
}

const char* backend_name() {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

Backend force_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_has_avx2())
    throw std::runtime_error("AVX2 backend requested but not available");
  apply(b);
  return g_backend;
}

void reset_backend() { apply(detect_backend()); }

void exp_v(const double* x, double* out, std::size_t n) {
  table().exp_v(x, out, n);
}

void scale_v(double a, const double* x, double* out, std::size_t n) {
  table().scale_v(a, x, out, n);
}

void trapezoid_products(const double* t, const double* d, const double* h,
                        double* g, std::size_t n_seg) {
  table().trapezoid_products(t, d, h, g, n_seg);
}

void shifted_axpy2(double* out, const double* src, std::ptrdiff_t shift,
                   double w0, double w1, std::size_t lo, std::size_t hi) {
  table().shifted_axpy2(out, src, shift, w0, w1, lo, hi);
}

void saturating_v(double c, double k, const double* x, double* out,
                  std::size_t n) {
  table().saturating_v(c, k, x, out, n);
}

}  // namespace pswitch::kernels
