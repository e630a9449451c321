#pragma once

// Per-mode data for the characteristic family
//   delta_k = ik I - A - sum_j e^{-ik r_j} B,  k in Z,
// and the scaled inverses M_k = ik delta_k^{-1} that drive solvability.

#include "pdde/model.hpp"

namespace pdde {

// Thin SVD bundle; solves go through it so near-singular modes stay honest.
struct SvdFactor {
  Mat U, V;
  Eigen::VectorXd sigma;

  Vec solve(const Vec& rhs) const;
  Mat inverse() const;
  double sigma_max() const { return sigma.size() ? sigma(0) : 0.0; }
  double sigma_min() const { return sigma.size() ? sigma(sigma.size() - 1) : 0.0; }
};

SvdFactor svd_factor(const Mat& m);

struct SymbolEntry {
  long k = 0;
  Mat delta;
  SvdFactor factor;
  double cond = 0.0;             // sigma_max / sigma_min, +inf when singular
  bool invertible = false;       // cond below the singularity threshold
  double multiplier_norm = 0.0;  // ||ik delta_k^{-1}||_2, 0 at k = 0, +inf when singular
};

// sum_j e^{-ik r_j} B.
Mat delay_term(const DelaySystem& sys, long k);

// delta_k without factorization.
Mat delta_matrix(const DelaySystem& sys, long k);

SymbolEntry assemble_delta(const DelaySystem& sys, long k);

// delta_k^{-1} rhs; throws SingularMode when the entry is not invertible.
Vec apply_inverse(const SymbolEntry& e, const Vec& rhs);

// M_k = ik delta_k^{-1}; throws SingularMode when not invertible.
Mat multiplier_matrix(const SymbolEntry& e);

// k (M_{k+1} - M_k) two ways: direct difference, and the factored form
//   (-ik/(k+1)) M_{k+1} (C_k - C_{k+1}) M_k + (k/(k+1)) M_{k+1},
// C_k = ik I - sum_j e^{-ik r_j} B. The two agree to roundoff; keeping both
// exposed makes the cancellation structure testable. k = -1 has no factored
// form (DegenerateMode); singular neighbours raise SingularMode.
struct MultiplierPair {
  long k = 0;
  Mat direct;
  Mat factored;
};

MultiplierPair variation_pair(const DelaySystem& sys, long k);

}  // namespace pdde
