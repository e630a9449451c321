#include "pdde/oracle.hpp"

#include <cmath>

namespace pdde {

namespace {

constexpr double kBlowup = 1e12;

Vec hermite(const Vec& x0, const Vec& d0, const Vec& x1, const Vec& d1, double dt, double th) {
  const double th2 = th * th, th3 = th2 * th;
  const double h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
  const double h10 = th3 - 2.0 * th2 + th;
  const double h01 = -2.0 * th3 + 3.0 * th2;
  const double h11 = th3 - th2;
  return h00 * x0 + (h10 * dt) * d0 + h01 * x1 + (h11 * dt) * d1;
}

}  // namespace

Vec Trajectory::interpolate(double t) const {
  if (t <= 0.0) {
    if (t < -history_len * dt - 1e-9)
      throw Error(Errc::WindowTooSmall, "time before recorded history");
    return history_value;
  }
  const double pos = t / dt;
  long j = static_cast<long>(pos);
  const long last = static_cast<long>(values.size()) - 1 - history_len;
  if (j >= last) {
    if (pos > static_cast<double>(last) + 1e-9)
      throw Error(Errc::WindowTooSmall, "time past end of trajectory");
    j = last - 1;
  }
  const double th = pos - static_cast<double>(j);
  const std::size_t i0 = static_cast<std::size_t>(j + history_len);
  return hermite(values[i0], derivs[i0], values[i0 + 1], derivs[i0 + 1], dt, th);
}

Trajectory integrate(const DelaySystem& sys, const FourierCoefficients& f, const Vec& history,
                     int periods, double dt, int grid_per_period) {
  const Eigen::Index d = sys.dim();
  if (history.size() != d) throw Error(Errc::DimensionMismatch, "history dimension mismatch");
  if (f.dim() != d) throw Error(Errc::DimensionMismatch, "forcing dimension mismatch");
  if (periods < 1) throw Error(Errc::WindowTooSmall, "need at least one period");
  if (grid_per_period < 1) throw Error(Errc::WindowTooSmall, "comparison grid must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::StepTooLarge, "dt must be positive");
  if (dt > sys.min_delay() / 4.0)
    throw Error(Errc::StepTooLarge, "dt exceeds a quarter of the shortest delay");

  long n = static_cast<long>(std::ceil(kPeriod / dt - 1e-9));
  n = ((n + grid_per_period - 1) / grid_per_period) * grid_per_period;
  const double h = kPeriod / static_cast<double>(n);

  Trajectory traj;
  traj.dt = h;
  traj.steps_per_period = static_cast<int>(n);
  traj.periods = periods;
  traj.compare_grid = grid_per_period;
  traj.history_len = static_cast<int>(std::ceil(sys.max_delay() / h)) + 2;
  traj.history_value = history;

  const long total = traj.history_len + n * periods;
  traj.values.assign(static_cast<std::size_t>(total) + 1, history);
  traj.derivs.assign(static_cast<std::size_t>(total) + 1, Vec::Zero(d));

  const long H = traj.history_len;

  // delayed lookup during the march; node j+1 of any queried interval is
  // already computed because every delay spans at least 4 steps
  auto delayed_state = [&](double t, long known) -> Vec {
    if (t <= 0.0) return history;
    const double pos = t / h;
    long j = static_cast<long>(pos);
    if (j > known - 1) j = known - 1;
    const double th = pos - static_cast<double>(j);
    const std::size_t i0 = static_cast<std::size_t>(j + H);
    return hermite(traj.values[i0], traj.derivs[i0], traj.values[i0 + 1], traj.derivs[i0 + 1],
                   h, th);
  };

  auto rhs = [&](double t, const Vec& y, long known) {
    Vec v = sys.A() * y + f.evaluate(t);
    for (double r : sys.delays()) v += sys.B() * delayed_state(t - r, known);
    return v;
  };

  for (long i = 0; i < n * periods; ++i) {
    const double t = static_cast<double>(i) * h;
    const Vec& x = traj.values[static_cast<std::size_t>(H + i)];
    Vec k1 = rhs(t, x, i);
    traj.derivs[static_cast<std::size_t>(H + i)] = k1;
    Vec k2 = rhs(t + 0.5 * h, x + (0.5 * h) * k1, i);
    Vec k3 = rhs(t + 0.5 * h, x + (0.5 * h) * k2, i);
    Vec k4 = rhs(t + h, x + h * k3, i);
    Vec next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite() || next.norm() > kBlowup)
      throw Error(Errc::Divergence, "state norm passed 1e12 at t = " + std::to_string(t + h));
    traj.values[static_cast<std::size_t>(H + i + 1)] = std::move(next);
  }
  const double t_end = static_cast<double>(n * periods) * h;
  traj.derivs[static_cast<std::size_t>(total)] =
      rhs(t_end, traj.values[static_cast<std::size_t>(total)], n * periods);
  return traj;
}

PeriodicCompare periodic_compare(const Trajectory& traj, const PeriodicSolution& sol) {
  const int P = traj.periods;
  if (P < 3) throw Error(Errc::WindowTooSmall, "need at least 3 periods to compare");
  const long n = traj.steps_per_period;
  const long stride = n / traj.compare_grid;
  const long H = traj.history_len;
  const int G = traj.compare_grid;

  auto node = [&](int period, int q) -> const Vec& {
    return traj.values[static_cast<std::size_t>(H + period * n + q * stride)];
  };

  PeriodicCompare out;
  double scale = 0.0;
  for (int m = 1; m < P; ++m) {
    double dm = 0.0;
    for (int q = 0; q <= G; ++q) {
      const double diff = (node(m, q) - node(m - 1, q)).norm();
      if (diff > dm) dm = diff;
    }
    out.period_diffs.push_back(dm);
  }
  for (int q = 0; q <= G; ++q) {
    const double mag = node(P - 1, q).norm();
    if (mag > scale) scale = mag;
    const double t = static_cast<double>(q * stride) * traj.dt;
    const double err = (node(P - 1, q) - sol.coeffs.evaluate(t)).norm();
    if (err > out.sup_error_last_period) out.sup_error_last_period = err;
  }

  const double d_last = out.period_diffs.back();
  const double d_prev = out.period_diffs[out.period_diffs.size() - 2];
  out.last_ratio = (d_prev > 0.0) ? d_last / d_prev : 0.0;
  const bool collapsed = d_last <= 1e-12 * (1.0 + scale);
  const bool shrinking = d_prev > 0.0 && out.last_ratio <= 0.9;
  out.contraction = collapsed || shrinking;
  if (!out.contraction)
    throw Error(Errc::OracleNotConverged,
                "period-to-period difference is not contracting (last ratio " +
                    std::to_string(out.last_ratio) + ")");
  return out;
}

}  // namespace pdde
