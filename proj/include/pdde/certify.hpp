#pragma once

// Solvability certification. A finite symbol scan plus a Neumann tail bound
// covers all of Z: beyond the tail threshold the multipliers are uniformly
// bounded by 2, so a clean scan window reaching that threshold certifies
// boundedness of the whole family. The Rademacher estimator corroborates the
// analytic route; it never decides the verdict.

#include <cstdint>

#include "pdde/symbol.hpp"

namespace pdde {

enum class Verdict { Solvable, Unsolvable, Inconclusive };

const char* verdict_name(Verdict v);

struct SolvabilityReport {
  long scan_K = 0;
  std::vector<long> singular_modes;   // |k| <= scan_K with non-invertible symbol
  double sup_multiplier_norm = 0.0;   // over invertible scanned modes
  double max_cond = 0.0;              // over invertible scanned modes
  long tail_K = 0;
  double tail_bound = 2.0;            // ||M_k|| bound for |k| >= tail_K
  double rbound_estimate = 0.0;       // filled by analyze; 0 until then
  Verdict verdict = Verdict::Inconclusive;
};

// Smallest threshold the Neumann argument certifies: past
// ceil(2 (||A|| + n ||B||)) + 1 every symbol is invertible with ||M_k|| <= 2.
long tail_mode(const DelaySystem& sys);

// Walk |k| <= K, collect singular modes and the multiplier sup. Verdict:
// any singular mode -> Unsolvable; clean scan with K >= tail threshold ->
// Solvable; clean but short window -> Inconclusive.
SolvabilityReport scan(const DelaySystem& sys, long K);

// Multipliers M_k for invertible |k| <= K (zero matrix at k = 0).
std::vector<Mat> multiplier_family(const DelaySystem& sys, long K);

// Monte-Carlo lower estimate of the Rademacher bound R_p of a finite family.
// Random subfamilies (size <= 10, drawn with replacement) and Gaussian
// vectors, plus every singleton paired with its top right singular vector;
// sign expectations are enumerated exactly. Non-decreasing in trials for a
// fixed seed. Throws EmptyFamily.
double rbound_estimate(const std::vector<Mat>& family, double p, int trials,
                       std::uint64_t seed);

// sup over k in [-K, K] of ||k (M_{k+1} - M_k)||_2, the discrete variation
// the multiplier criterion controls. Throws SingularMode if any mode in
// [-K, K+1] is singular.
double variation_report(const DelaySystem& sys, long K);

}  // namespace pdde
