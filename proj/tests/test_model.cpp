#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "pdde/errors.hpp"
#include "pdde/model.hpp"
#include "test_util.hpp"

using namespace pdde;
namespace tu = pdde::testutil;

TEST_CASE("a well formed problem validates") {
  RawProblem raw;
  raw.dim = 2;
  raw.A = Mat::Identity(2, 2);
  raw.B = Mat::Zero(2, 2);
  raw.delays = {1.0, 0.25};
  CHECK(check_system(raw).empty());
  const DelaySystem sys = validate_system(raw);
  CHECK(sys.dim() == 2);
  CHECK(sys.min_delay() == 0.25);
  CHECK(sys.max_delay() == 1.0);
  CHECK(sys.delay_count() == 2);
}

TEST_CASE("validation reports every violation at once") {
  RawProblem raw;
  raw.dim = 2;
  raw.A = Mat::Zero(2, 3);                       // not square
  raw.B = Mat::Zero(2, 2);
  raw.B(0, 1) = Cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  raw.delays = {1.0, -0.5};                      // negative delay
  const auto violations = check_system(raw);
  CHECK(violations.size() >= 3);
  bool saw_square = false, saw_finite = false, saw_delay = false;
  for (const auto& v : violations) {
    if (v.code == Errc::NonSquareMatrix) saw_square = true;
    if (v.code == Errc::NonFiniteEntry) saw_finite = true;
    if (v.code == Errc::NonPositiveDelay) saw_delay = true;
  }
  CHECK(saw_square);
  CHECK(saw_finite);
  CHECK(saw_delay);
  CHECK_THROWS_AS(validate_system(raw), ValidationError);
}

TEST_CASE("dimension mismatch between stated dim and matrices is rejected") {
  RawProblem raw;
  raw.dim = 3;
  raw.A = Mat::Identity(2, 2);
  raw.B = Mat::Zero(2, 2);
  raw.delays = {1.0};
  const auto violations = check_system(raw);
  REQUIRE(!violations.empty());
  bool saw = false;
  for (const auto& v : violations)
    if (v.code == Errc::DimensionMismatch) saw = true;
  CHECK(saw);
}

TEST_CASE("empty delay list is rejected") {
  RawProblem raw;
  raw.dim = 1;
  raw.A = Mat::Zero(1, 1);
  raw.B = Mat::Zero(1, 1);
  const auto violations = check_system(raw);
  REQUIRE(!violations.empty());
  CHECK(violations.front().code == Errc::DimensionMismatch);
}

TEST_CASE("operator norms are computed on construction") {
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = 3.0;
  A(1, 1) = Cplx(0.0, -4.0);
  Mat B = Mat::Zero(2, 2);
  B(0, 1) = 1.0;
  const DelaySystem sys(A, B, {2.0});
  CHECK(sys.norm_A() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(sys.norm_B() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("coefficient map stores, adds, and prunes") {
  FourierCoefficients c(2);
  Vec v(2);
  v << Cplx(1, 0), Cplx(0, 2);
  c.set(3, v);
  CHECK(c.has(3));
  CHECK(!c.has(-3));
  CHECK(c.at(-3).norm() == 0.0);
  CHECK(c.at(-3).size() == 2);
  c.add(3, v);
  CHECK(c.at(3)(1) == Cplx(0, 4));
  c.add(-1, v);
  CHECK(c.size() == 2);
  CHECK(c.max_mode() == 3);
  c.set(5, Vec::Zero(2));
  CHECK(c.max_mode() == 3);  // zero entries carry no mode
  c.prune(1e-15);
  CHECK(!c.has(5));
}

TEST_CASE("evaluate matches the analytic sum") {
  FourierCoefficients c(1);
  c.set(1, Vec::Constant(1, Cplx(1.0, 0.0)));
  c.set(-2, Vec::Constant(1, Cplx(0.0, 0.5)));
  const double t = 0.73;
  const Cplx want = std::polar(1.0, t) + Cplx(0.0, 0.5) * std::polar(1.0, -2.0 * t);
  CHECK(std::abs(c.evaluate(t)(0) - want) <= 1e-15);
}

TEST_CASE("delayed coefficients shift the argument") {
  std::mt19937_64 rng(31);
  const auto c = tu::random_coefficients(rng, 3, 5);
  const double r = 1.234;
  const auto cd = c.delayed(r);
  for (double t : {0.0, 0.4, 2.9, 6.0}) {
    CHECK((cd.evaluate(t) - c.evaluate(t - r)).norm() <= 1e-13);
  }
}

TEST_CASE("differentiated coefficients scale by ik") {
  std::mt19937_64 rng(32);
  const auto c = tu::random_coefficients(rng, 2, 4);
  const auto dc = c.differentiated();
  for (long k = -4; k <= 4; ++k) {
    CHECK((dc.at(k) - Cplx(0.0, static_cast<double>(k)) * c.at(k)).norm() <= 1e-15);
  }
  // derivative of a mean is zero, so mode 0 drops out
  CHECK(dc.at(0).norm() == 0.0);
}

TEST_CASE("conjugate symmetric coefficients are flagged real") {
  FourierCoefficients c(1);
  c.set(2, Vec::Constant(1, Cplx(0.5, -0.25)));
  c.set(-2, Vec::Constant(1, Cplx(0.5, 0.25)));
  c.set(0, Vec::Constant(1, Cplx(1.0, 0.0)));
  CHECK(c.is_real());
  c.set(-2, Vec::Constant(1, Cplx(0.5, 0.2)));
  CHECK(!c.is_real());
  FourierCoefficients r(1);
  r.set(1, Vec::Constant(1, Cplx(0.5, 0.0)));
  r.set(-1, Vec::Constant(1, Cplx(0.5, 0.0)));
  CHECK(std::abs(r.evaluate(0.9)(0).imag()) <= 1e-15);
}

TEST_CASE("coeff_norm_sum adds entry norms") {
  FourierCoefficients c(2);
  Vec v(2);
  v << Cplx(3, 0), Cplx(0, 4);
  c.set(0, v);
  c.set(7, 2.0 * v);
  CHECK(c.coeff_norm_sum() == doctest::Approx(15.0).epsilon(1e-14));
}

TEST_CASE("set rejects wrong sized vectors") {
  FourierCoefficients c(2);
  CHECK_THROWS_AS(c.set(0, Vec::Zero(3)), Error);
}
