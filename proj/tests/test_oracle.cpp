#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pdde/oracle.hpp"
#include "test_util.hpp"

using namespace pdde;
namespace tu = pdde::testutil;

namespace {

// x' = -x + e^{it}, no delay feedback, zero start: x(t) = c (e^{it} - e^{-t})
DelaySystem decoupled_system() {
  return DelaySystem(Mat::Constant(1, 1, Cplx(-1.0, 0.0)), Mat::Zero(1, 1), {kPi});
}

Cplx decoupled_exact(double t) {
  const Cplx c = 1.0 / Cplx(1.0, 1.0);
  return c * (std::polar(1.0, t) - std::exp(-t));
}

double transient_error(const Trajectory& traj) {
  double err = 0.0;
  for (int i = 0; i <= traj.steps_per_period; ++i) {
    const double t = i * traj.dt;
    err = std::max(err,
                   std::abs(traj.values[static_cast<std::size_t>(traj.history_len + i)](0) -
                            decoupled_exact(t)));
  }
  return err;
}

}  // namespace

TEST_CASE("step size is validated before rounding") {
  const auto sys = tu::reference_system();  // min delay pi
  const auto f = tu::unit_mode_forcing(1);
  CHECK_THROWS_AS(integrate(sys, f, Vec::Zero(1), 3, 1.0), Error);
  try {
    integrate(sys, f, Vec::Zero(1), 3, 0.786);  // pi/4 is about 0.7854
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::StepTooLarge);
  }
  CHECK_NOTHROW(integrate(sys, f, Vec::Zero(1), 3, 0.78));
}

TEST_CASE("effective step divides the period into grid multiples") {
  const auto sys = tu::reference_system();
  const auto f = tu::unit_mode_forcing(1);
  const auto traj = integrate(sys, f, Vec::Zero(1), 3, 1e-3);
  CHECK(traj.steps_per_period % 64 == 0);
  CHECK(traj.steps_per_period == 6336);  // ceil(2 pi / 1e-3) = 6284, rounded up
  CHECK(traj.dt <= 1e-3);
  CHECK(traj.dt * traj.steps_per_period == doctest::Approx(kPeriod).epsilon(1e-15));

  // an exactly dividing request is kept, not bumped to the next multiple
  const auto t2 = integrate(sys, f, Vec::Zero(1), 3, kPeriod / 1024.0);
  CHECK(t2.steps_per_period == 1024);
}

TEST_CASE("constant history is reproduced for nonpositive times") {
  const auto sys = tu::reference_system();
  const auto f = tu::unit_mode_forcing(1);
  const Vec h0 = Vec::Constant(1, Cplx(0.25, -0.5));
  const auto traj = integrate(sys, f, h0, 3, 0.01);
  CHECK((traj.interpolate(0.0) - h0).norm() == 0.0);
  CHECK((traj.interpolate(-2.0) - h0).norm() == 0.0);
  CHECK_THROWS_AS(traj.interpolate(-1e6), Error);
  CHECK_THROWS_AS(traj.interpolate(kPeriod * 100.0), Error);
}

TEST_CASE("rk4 reproduces the decoupled closed form to fourth order") {
  const auto sys = decoupled_system();
  const auto f = tu::unit_mode_forcing(1);
  const auto coarse = integrate(sys, f, Vec::Zero(1), 1, kPeriod / 1024.0);
  const auto fine = integrate(sys, f, Vec::Zero(1), 1, kPeriod / 2048.0);
  REQUIRE(coarse.steps_per_period == 1024);
  REQUIRE(fine.steps_per_period == 2048);
  const double ec = transient_error(coarse);
  const double ef = transient_error(fine);
  CHECK(ec <= 1e-9);
  CHECK(ef < ec);
  const double order = std::log2(ec / ef);
  CHECK(order >= 3.3);
  CHECK(order <= 4.7);
}

TEST_CASE("hermite interpolation holds between nodes") {
  const auto sys = decoupled_system();
  const auto f = tu::unit_mode_forcing(1);
  const auto traj = integrate(sys, f, Vec::Zero(1), 1, kPeriod / 1024.0);
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> ts(0.1, kPeriod - 0.1);
  for (int i = 0; i < 50; ++i) {
    const double t = ts(rng);
    CHECK(std::abs(traj.interpolate(t)(0) - decoupled_exact(t)) <= 1e-8);
  }
}

TEST_CASE("delay feedback settles onto the spectral solution") {
  const auto sys = tu::reference_system();
  const auto f = tu::unit_mode_forcing(1);
  const auto sol = solve(sys, f, 4);
  const auto traj = integrate(sys, f, sol.coeffs.at(0), 12, 2e-3);
  const auto cmp = periodic_compare(traj, sol);
  CHECK(cmp.contraction);
  CHECK(cmp.sup_error_last_period <= 1e-4);
  CHECK(cmp.last_ratio <= 0.9);
  REQUIRE(cmp.period_diffs.size() == 11);
  // the slow mode decays by about exp(-1.07) per period
  CHECK(cmp.period_diffs.back() < cmp.period_diffs.front());
}

TEST_CASE("divergent dynamics are reported, not returned") {
  const DelaySystem sys(Mat::Constant(1, 1, Cplx(1.0, 0.0)), Mat::Zero(1, 1), {kPi});
  const auto f = tu::unit_mode_forcing(1);
  try {
    integrate(sys, f, Vec::Constant(1, Cplx(2.0, 0.0)), 6, 5e-3);
    FAIL("expected Divergence");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Divergence);
  }
}

TEST_CASE("neutral rotation never certifies contraction") {
  // x' = 0.5 i x + e^{it}: the homogeneous part e^{0.5 i t} never decays and
  // flips sign each period, so period differences stall
  const DelaySystem sys(Mat::Constant(1, 1, Cplx(0.0, 0.5)), Mat::Zero(1, 1), {kPi});
  const auto f = tu::unit_mode_forcing(1);
  const auto sol = solve(sys, f, 2);
  const auto traj = integrate(sys, f, Vec::Zero(1), 5, 5e-3);
  try {
    periodic_compare(traj, sol);
    FAIL("expected OracleNotConverged");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OracleNotConverged);
  }
}

TEST_CASE("comparison needs three periods") {
  const auto sys = tu::reference_system();
  const auto f = tu::unit_mode_forcing(1);
  const auto sol = solve(sys, f, 4);
  const auto traj = integrate(sys, f, Vec::Zero(1), 2, 0.01);
  CHECK_THROWS_AS(periodic_compare(traj, sol), Error);
}

TEST_CASE("integrate validates shapes and counts") {
  const auto sys = tu::reference_system();
  const auto f = tu::unit_mode_forcing(1);
  CHECK_THROWS_AS(integrate(sys, f, Vec::Zero(2), 3, 0.01), Error);
  CHECK_THROWS_AS(integrate(sys, f, Vec::Zero(1), 0, 0.01), Error);
  CHECK_THROWS_AS(integrate(sys, tu::unit_mode_forcing(1, 2), Vec::Zero(1), 3, 0.01), Error);
}
