#include "pdde/kernels.hpp"

#ifdef PDDE_BUILD_AVX2

#include <immintrin.h>

// Complex values live interleaved (re, im) so a 256-bit lane holds two of
// them. Accumulator pairs keep the plain and the swapped products separate;
// the horizontal combine happens once at the end.

namespace pdde::kernels::detail {
namespace {

std::complex<double> cdot_avx2(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const std::size_t n2 = 2 * n;
  __m256d p0 = _mm256_setzero_pd(), x0 = _mm256_setzero_pd();
  __m256d p1 = _mm256_setzero_pd(), x1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n2; i += 8) {
    __m256d va = _mm256_loadu_pd(pa + i);
    __m256d vb = _mm256_loadu_pd(pb + i);
    p0 = _mm256_fmadd_pd(va, vb, p0);
    x0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), x0);
    __m256d vc = _mm256_loadu_pd(pa + i + 4);
    __m256d vd = _mm256_loadu_pd(pb + i + 4);
    p1 = _mm256_fmadd_pd(vc, vd, p1);
    x1 = _mm256_fmadd_pd(vc, _mm256_permute_pd(vd, 0x5), x1);
  }
  for (; i + 4 <= n2; i += 4) {
    __m256d va = _mm256_loadu_pd(pa + i);
    __m256d vb = _mm256_loadu_pd(pb + i);
    p0 = _mm256_fmadd_pd(va, vb, p0);
    x0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), x0);
  }
  p0 = _mm256_add_pd(p0, p1);
  x0 = _mm256_add_pd(x0, x1);
  alignas(32) double p[4], x[4];
  _mm256_store_pd(p, p0);
  _mm256_store_pd(x, x0);
  // even slots: ar*br resp. ar*bi, odd slots: ai*bi resp. ai*br
  double re = (p[0] + p[2]) - (p[1] + p[3]);
  double im = (x[0] + x[2]) + (x[1] + x[3]);
  for (; i < n2; i += 2) {
    const double ar = pa[i], ai = pa[i + 1], br = pb[i], bi = pb[i + 1];
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

void caxpy_avx2(std::complex<double>* y, std::complex<double> alpha,
                const std::complex<double>* x, std::size_t n) {
  double* py = reinterpret_cast<double*>(y);
  const double* px = reinterpret_cast<const double*>(x);
  const std::size_t n2 = 2 * n;
  const __m256d vcr = _mm256_set1_pd(alpha.real());
  const __m256d vci = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 4 <= n2; i += 4) {
    __m256d vx = _mm256_loadu_pd(px + i);
    __m256d vy = _mm256_loadu_pd(py + i);
    __m256d t = _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), vci);
    // even: cr*xr - ci*xi, odd: cr*xi + ci*xr
    __m256d r = _mm256_fmaddsub_pd(vx, vcr, t);
    _mm256_storeu_pd(py + i, _mm256_add_pd(vy, r));
  }
  for (; i < n2; i += 2) {
    const double xr = px[i], xi = px[i + 1];
    py[i] += alpha.real() * xr - alpha.imag() * xi;
    py[i + 1] += alpha.real() * xi + alpha.imag() * xr;
  }
}

void sq_accum_avx2(double* out, const std::complex<double>* x, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(px + 2 * i);
    __m256d v1 = _mm256_loadu_pd(px + 2 * i + 4);
    __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    h = _mm256_permute4x64_pd(h, 0xD8);  // undo the lane interleave of hadd
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), h));
  }
  for (; i < n; ++i)
    out[i] += px[2 * i] * px[2 * i] + px[2 * i + 1] * px[2 * i + 1];
}

double sumsq_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d v0 = _mm256_loadu_pd(x + i);
    __m256d v1 = _mm256_loadu_pd(x + i + 4);
    a0 = _mm256_fmadd_pd(v0, v0, a0);
    a1 = _mm256_fmadd_pd(v1, v1, a1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(x + i);
    a0 = _mm256_fmadd_pd(v0, v0, a0);
  }
  a0 = _mm256_add_pd(a0, a1);
  alignas(32) double s[4];
  _mm256_store_pd(s, a0);
  double total = (s[0] + s[2]) + (s[1] + s[3]);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double vmax_avx2(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double m = x[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d vm = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + i));
    alignas(32) double s[4];
    _mm256_store_pd(s, vm);
    m = s[0];
    for (int j = 1; j < 4; ++j)
      if (s[j] > m) m = s[j];
  }
  for (; i < n; ++i)
    if (x[i] > m) m = x[i];
  return m;
}

}  // namespace

const VTable avx2_table = {cdot_avx2, caxpy_avx2, sq_accum_avx2, sumsq_avx2, vmax_avx2};

}  // namespace pdde::kernels::detail

#endif  // PDDE_BUILD_AVX2
