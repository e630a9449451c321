#pragma once

// Mode-by-mode solve: each forcing coefficient f_k is pushed through
// delta_k^{-1}, giving the unique periodic trigonometric-polynomial solution
// when every touched mode is invertible.

#include <optional>

#include "pdde/certify.hpp"

namespace pdde {

struct PeriodicSolution {
  FourierCoefficients coeffs;
  FourierCoefficients deriv_coeffs;
  long truncation_K = 0;
  double residual_sup = 0.0;
};

// Solve with truncation K >= max_mode(f); throws TruncationTooSmall below
// that, and SingularMode (listing every obstructed mode) when some nonzero
// forcing coefficient sits on a singular symbol.
PeriodicSolution solve(const DelaySystem& sys, const FourierCoefficients& f, long K);

// sup over the M-point uniform grid of ||x' - A x - sum_j B x(.-r_j) - f||_2.
double residual(const DelaySystem& sys, const PeriodicSolution& sol,
                const FourierCoefficients& f, int M);

// Kernel direction at a singular mode: e^{ikt} v solves the homogeneous
// equation up to `defect`. Empty when delta_k is invertible.
struct HomogeneousMode {
  long k = 0;
  Vec direction;
  double defect = 0.0;
};

std::optional<HomogeneousMode> homogeneous_mode(const DelaySystem& sys, long k);

}  // namespace pdde
