#pragma once

// Hot inner loops over packed complex<double> arrays. A scalar reference
// implementation always exists; on x86-64 an AVX2+FMA variant is compiled in
// and picked at startup when the CPU supports it. Override with the
// PDDE_KERNELS environment variable (scalar | avx2 | auto) or select().

#include <complex>
#include <cstddef>

namespace pdde::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Switch the active backend. Auto resolves to the best supported variant.
// Throws std::invalid_argument for a variant not usable on this host.
void select(Backend b);
Backend active();
const char* backend_name(Backend b);
bool avx2_available();

// Unconjugated dot product: sum_i a[i]*b[i].
std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n);

// y[i] += alpha * x[i].
void caxpy(std::complex<double>* y, std::complex<double> alpha,
           const std::complex<double>* x, std::size_t n);

// out[i] += |x[i]|^2.
void sq_accum(double* out, const std::complex<double>* x, std::size_t n);

// sum_i x[i]^2.
double sumsq(const double* x, std::size_t n);

// max_i x[i]; 0 for n == 0.
double vmax(const double* x, std::size_t n);

namespace detail {

struct VTable {
  std::complex<double> (*cdot)(const std::complex<double>*, const std::complex<double>*,
                               std::size_t);
  void (*caxpy)(std::complex<double>*, std::complex<double>, const std::complex<double>*,
                std::size_t);
  void (*sq_accum)(double*, const std::complex<double>*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  double (*vmax)(const double*, std::size_t);
};

extern const VTable scalar_table;
#ifdef PDDE_BUILD_AVX2
extern const VTable avx2_table;
#endif

}  // namespace detail

}  // namespace pdde::kernels
