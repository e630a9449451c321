#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pdde/solver.hpp"
#include "test_util.hpp"

using namespace pdde;
namespace tu = pdde::testutil;

TEST_CASE("reference problem solves to the closed-form coefficient") {
  const auto sys = tu::reference_system();
  const auto f = tu::unit_mode_forcing(1);
  const auto sol = solve(sys, f, 8);
  CHECK(sol.truncation_K == 8);
  const Cplx want = 1.0 / Cplx(1.5, 1.0);
  CHECK(std::abs(sol.coeffs.at(1)(0) - want) <= 1e-12);
  CHECK(sol.coeffs.max_mode() == 1);
  CHECK(std::abs(sol.deriv_coeffs.at(1)(0) - Cplx(0, 1) * want) <= 1e-12);
  CHECK(sol.residual_sup <= 1e-10);
}

TEST_CASE("zero forcing gives the zero solution") {
  const auto sol = solve(tu::reference_system(), FourierCoefficients(1), 4);
  CHECK(sol.coeffs.max_mode() == 0);
  CHECK(sol.coeffs.coeff_norm_sum() == 0.0);
  CHECK(sol.residual_sup == 0.0);
}

TEST_CASE("truncation must cover the forcing") {
  const auto f = tu::unit_mode_forcing(3);
  CHECK_THROWS_AS(solve(tu::reference_system(), f, 2), Error);
  try {
    solve(tu::reference_system(), f, 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TruncationTooSmall);
  }
}

TEST_CASE("forcing on a singular mode is obstructed") {
  const auto sys = tu::degenerate_system();
  auto f = tu::unit_mode_forcing(1);
  f.add(2, Vec::Ones(1));
  try {
    solve(sys, f, 6);
    FAIL("expected SingularMode");
  } catch (const ModeError& e) {
    CHECK(e.code() == Errc::SingularMode);
    REQUIRE(e.modes().size() == 1);
    CHECK(e.modes()[0] == 1);
  }
}

TEST_CASE("forcing that avoids the singular set still solves") {
  const auto sys = tu::degenerate_system();
  const auto f = tu::unit_mode_forcing(2);  // delta_2 = -2 + i, fine
  const auto sol = solve(sys, f, 6);
  CHECK(sol.residual_sup <= 1e-10);
  const Cplx d2 = Cplx(0, 2) - Cplx(1, 1) - std::polar(1.0, -2.0 * kPi);
  CHECK(std::abs(sol.coeffs.at(2)(0) - 1.0 / d2) <= 1e-12);
}

TEST_CASE("zero-norm forcing entries are skipped, not obstructed") {
  const auto sys = tu::degenerate_system();
  auto f = tu::unit_mode_forcing(2);
  f.set(1, Vec::Zero(1));  // sits on the singular mode but carries nothing
  CHECK_NOTHROW(solve(sys, f, 6));
}

TEST_CASE("multimode random solve satisfies the modal equations") {
  std::mt19937_64 rng(61);
  const auto sys = tu::random_system(rng, 3, 2);
  auto f = tu::random_coefficients(rng, sys.dim(), 5);
  const auto sol = solve(sys, f, 8);
  for (long k = -5; k <= 5; ++k) {
    const Mat dk = delta_matrix(sys, k);
    CHECK((dk * sol.coeffs.at(k) - f.at(k)).norm() <= 1e-10 * (1.0 + f.at(k).norm()));
  }
  // defect on a fine grid stays near roundoff for a spectral solve
  CHECK(sol.residual_sup <= 1e-9);
}

TEST_CASE("residual detects a corrupted coefficient") {
  const auto sys = tu::reference_system();
  const auto f = tu::unit_mode_forcing(1);
  auto sol = solve(sys, f, 4);
  const double clean = residual(sys, sol, f, 128);
  CHECK(clean <= 1e-10);
  sol.coeffs.add(1, Vec::Constant(1, Cplx(1e-3, 0.0)));
  sol.deriv_coeffs = sol.coeffs.differentiated();
  CHECK(residual(sys, sol, f, 128) >= 1e-4);
}

TEST_CASE("homogeneous direction at the singular mode") {
  const auto sys = tu::degenerate_system();
  const auto hm = homogeneous_mode(sys, 1);
  REQUIRE(hm.has_value());
  CHECK(hm->k == 1);
  CHECK(std::abs(hm->direction.norm() - 1.0) <= 1e-12);
  CHECK(hm->defect <= 1e-10);
  // invertible modes carry no kernel direction
  CHECK(!homogeneous_mode(sys, 2).has_value());
  CHECK(!homogeneous_mode(tu::reference_system(), 1).has_value());
}
