#include "pdde/kernels.hpp"

namespace pdde::kernels::detail {
namespace {

std::complex<double> cdot_scalar(const std::complex<double>* a, const std::complex<double>* b,
                                 std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

void caxpy_scalar(std::complex<double>* y, std::complex<double> alpha,
                  const std::complex<double>* x, std::size_t n) {
  const double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += std::complex<double>(cr * xr - ci * xi, cr * xi + ci * xr);
  }
}

void sq_accum_scalar(double* out, const std::complex<double>* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

double sumsq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double vmax_scalar(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] > m) m = x[i];
  return m;
}

}  // namespace

const VTable scalar_table = {cdot_scalar, caxpy_scalar, sq_accum_scalar, sumsq_scalar,
                             vmax_scalar};

}  // namespace pdde::kernels::detail
