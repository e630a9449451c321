#pragma once

// Semigroup-based cross checks. The spectral solution is re-validated in the
// time domain through the variation-of-constants representation
//   x(t) = T(t) x(0) + int_0^t T(t-s) [sum_j B x(s-r_j) + f(s)] ds,
// its integrated (weak) companion, and the modal consistency of sampled
// trajectories. All quadrature is composite Simpson on a uniform master grid
// whose nodes contain the evaluation grid.

#include <functional>

#include "pdde/fourier.hpp"
#include "pdde/solver.hpp"

namespace pdde {

// e^{tA} by scaling-and-squaring; t may be any finite real.
Mat semigroup(const Mat& A, double t);

struct MildCheck {
  Vec phi;                             // x(0)
  double fixed_point_residual = 0.0;   // defect of phi = T(2pi) phi + convolution
  double formula_residual_sup = 0.0;   // sup_t of the representation defect
  double integrated_residual_sup = 0.0;  // sup_t of the integrated-form defect
};

// grid: evaluation points per period (t_i = 2 pi i / grid). panels: Simpson
// cells on the master grid, rounded up so every prefix stays even. Throws
// QuadratureUnderresolved when halving the panel count moves the convolution
// by more than 10 * tol.
MildCheck mild_check(const DelaySystem& sys, const PeriodicSolution& sol,
                     const FourierCoefficients& f, int grid = 64, int panels = 2048,
                     double tol = 1e-6);

// Modal defect max_{|k| <= K} || delta_k xhat(k) - fhat(k) || of a sampled
// trajectory; the samples must cover one period uniformly.
double fourier_consistency(const DelaySystem& sys, const SampledSignal& samples,
                           const FourierCoefficients& f, long K);

// Defect of the Fubini identity
//   A int_0^t int_0^s T(s-u) g(u) du ds = int_0^t T(t-s) g(s) ds - int_0^t g(s) ds
// for a caller-supplied integrand g. Halving guard as in mild_check.
double nested_integral_check(const Mat& A, const std::function<Vec(double)>& g, double t,
                             int panels = 512, double tol = 1e-6);

// Fixed-point residuals of the Fejer-smoothed solution at the given orders:
// phi_l = x_l(0) plugged into the period map with delay feedback from x_l and
// the full forcing f. Decays toward the unsmoothed residual as l grows.
std::vector<double> fejer_fixed_point_residuals(const DelaySystem& sys,
                                                const PeriodicSolution& sol,
                                                const FourierCoefficients& f,
                                                const std::vector<long>& orders,
                                                int panels = 2048);

}  // namespace pdde
