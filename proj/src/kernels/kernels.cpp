#include "pdde/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace pdde::kernels {

namespace {

using detail::VTable;

bool cpu_has_avx2() {
#if defined(PDDE_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct State {
  const VTable* table;
  Backend which;
};

State resolve(Backend b) {
  if (b == Backend::Auto) {
    const char* env = std::getenv("PDDE_KERNELS");
    if (env != nullptr) {
      if (std::strcmp(env, "scalar") == 0) b = Backend::Scalar;
      else if (std::strcmp(env, "avx2") == 0) b = Backend::Avx2;
      // anything else, including "auto": keep probing
    }
  }
  if (b == Backend::Auto) b = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
#ifdef PDDE_BUILD_AVX2
  if (b == Backend::Avx2) {
    if (!cpu_has_avx2()) throw std::invalid_argument("avx2 kernels not supported on this cpu");
    return {&detail::avx2_table, Backend::Avx2};
  }
#else
  if (b == Backend::Avx2) throw std::invalid_argument("avx2 kernels not compiled in");
#endif
  return {&detail::scalar_table, Backend::Scalar};
}

State& state() {
  static State s = resolve(Backend::Auto);
  return s;
}

}  // namespace

void select(Backend b) { state() = resolve(b); }

Backend active() { return state().which; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

bool avx2_available() { return cpu_has_avx2(); }

std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n) {
  return state().table->cdot(a, b, n);
}

void caxpy(std::complex<double>* y, std::complex<double> alpha,
           const std::complex<double>* x, std::size_t n) {
  state().table->caxpy(y, alpha, x, n);
}

void sq_accum(double* out, const std::complex<double>* x, std::size_t n) {
  state().table->sq_accum(out, x, n);
}

double sumsq(const double* x, std::size_t n) { return state().table->sumsq(x, n); }

double vmax(const double* x, std::size_t n) { return state().table->vmax(x, n); }

}  // namespace pdde::kernels
