#pragma once

// Grid transforms between trigonometric polynomials and uniform samples on
// [0, 2*pi), plus the classical summation kernels and the quadrature used to
// take Fourier coefficients of a (generally non-periodic) antiderivative.

#include <vector>

#include "pdde/model.hpp"

namespace pdde {

// Samples v_m = v(2*pi*m / M), m = 0..M-1.
struct SampledSignal {
  Eigen::Index dim = 0;
  std::vector<Vec> values;

  int count() const { return static_cast<int>(values.size()); }
};

// Rectangle-rule analysis c_k = (1/M) sum_m e^{-ik t_m} v_m for |k| <= K.
// Exact for band-limited input when M >= 2K+1; throws WindowTooSmall below that.
FourierCoefficients analyze(const SampledSignal& s, long K);

// Evaluate on the uniform M-grid. Matches evaluate() pointwise up to roundoff
// but runs through the packed kernels.
SampledSignal synthesize(const FourierCoefficients& c, int M);

// Partial sum sum_{|k| <= m} c_k e^{ikt}.
Vec dirichlet_sum(const FourierCoefficients& c, long m, double t);

// Fejer mean of the partial sums: sum_{|k| <= l} (1 - |k|/(l+1)) c_k e^{ikt}.
Vec fejer_sum(const FourierCoefficients& c, long l, double t);

// The same mean as a coefficient map.
FourierCoefficients fejer_coefficients(const FourierCoefficients& c, long l);

// Cumulative integral g(t) = int_0^t f(s) ds of a trigonometric polynomial,
// evaluated on the closed grid t_j = 2*pi*j / M, j = 0..M. Composite
// Gauss-Legendre (5 nodes per cell), so g picks up no appreciable drift even
// when f has a mean and g is not periodic.
std::vector<Vec> cumulative_integral(const FourierCoefficients& f, int M);

// k-th Fourier coefficient (1/2pi) int_0^{2pi} e^{-ikt} g(t) dt of a function
// given on the closed grid (M+1 values, M even); composite Boole rule.
Vec fourier_coefficient(const std::vector<Vec>& g_closed, long k);

// Residual of the antiderivative identity
//   g_hat(k) = (i/k) f_hat(0) - (i/k) f_hat(k),  k != 0,
// where g_hat holds quadrature coefficients of g(t) = int_0^t f.
// Throws ZeroModeRequested for k == 0.
double antiderivative_check(const FourierCoefficients& f, const FourierCoefficients& g_hat,
                            long k);

namespace fourier_detail {
// e^{2*pi*i*j/M} for j = 0..M-1, with exact half-period negation symmetry
// for even M so opposite roots cancel to the last bit.
std::vector<Cplx> unit_roots(int M);
}  // namespace fourier_detail

}  // namespace pdde
