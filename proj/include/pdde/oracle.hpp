#pragma once

// Independent time-domain oracle: method-of-steps RK4 with cubic Hermite
// lookup of the delayed state. After enough periods the flow of a stable
// system contracts onto the periodic orbit, which is then compared phase by
// phase against the spectral solution.

#include "pdde/solver.hpp"

namespace pdde {

struct Trajectory {
  double dt = 0.0;          // effective step (requested dt rounded down)
  int steps_per_period = 0;
  int periods = 0;
  int compare_grid = 0;     // comparison phases per period; divides steps_per_period
  int history_len = 0;      // nodes before t = 0
  Vec history_value;
  std::vector<Vec> values;  // node i sits at t = (i - history_len) * dt
  std::vector<Vec> derivs;

  double time_at(long i) const { return (i - history_len) * dt; }

  // Cubic Hermite between nodes; constant history for t <= 0. Throws
  // WindowTooSmall outside the covered span.
  Vec interpolate(double t) const;
};

// March P periods from the constant history. The requested dt must satisfy
// dt <= min_j r_j / 4 (StepTooLarge otherwise); it is then shrunk so that a
// period is an exact multiple of grid_per_period steps. Throws Divergence
// when the state norm passes 1e12.
Trajectory integrate(const DelaySystem& sys, const FourierCoefficients& f, const Vec& history,
                     int periods, double dt, int grid_per_period = 64);

struct PeriodicCompare {
  double sup_error_last_period = 0.0;
  std::vector<double> period_diffs;  // sup difference between consecutive periods
  double last_ratio = 0.0;
  bool contraction = false;
};

// Requires at least 3 periods. Throws OracleNotConverged when the last
// period-to-period difference neither collapsed to roundoff nor keeps
// shrinking by the 0.9 factor.
PeriodicCompare periodic_compare(const Trajectory& traj, const PeriodicSolution& sol);

}  // namespace pdde
