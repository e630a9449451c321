#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pdde/fourier.hpp"
#include "test_util.hpp"

using namespace pdde;
namespace tu = pdde::testutil;

namespace {

SampledSignal sample_grid(const FourierCoefficients& c, int M) {
  SampledSignal s;
  s.dim = c.dim();
  for (int m = 0; m < M; ++m) s.values.push_back(c.evaluate(kPeriod * m / M));
  return s;
}

FourierCoefficients cos_signal() {
  FourierCoefficients c(1);
  c.set(1, Vec::Constant(1, Cplx(0.5, 0.0)));
  c.set(-1, Vec::Constant(1, Cplx(0.5, 0.0)));
  return c;
}

}  // namespace

TEST_CASE("analysis of e^{it} on eight points is exact") {
  auto f = tu::unit_mode_forcing(1);
  const auto c = analyze(sample_grid(f, 8), 2);
  CHECK(std::abs(c.at(1)(0) - Cplx(1.0, 0.0)) <= 1e-15);
  for (long k : {-2L, -1L, 0L, 2L}) CHECK(c.at(k).norm() <= 1e-15);
}

TEST_CASE("analysis needs 2K+1 samples") {
  auto f = tu::unit_mode_forcing(1);
  CHECK_THROWS_AS(analyze(sample_grid(f, 8), 4), Error);
  CHECK_NOTHROW(analyze(sample_grid(f, 9), 4));
}

TEST_CASE("analyze is a left inverse of synthesize") {
  std::mt19937_64 rng(71);
  const long K = 5;
  const auto c = tu::random_coefficients(rng, 3, K);
  for (int M : {2 * static_cast<int>(K) + 1, 64}) {
    const auto back = analyze(synthesize(c, M), K);
    for (long k = -K; k <= K; ++k) CHECK((back.at(k) - c.at(k)).norm() <= 1e-12);
  }
}

TEST_CASE("synthesize matches pointwise evaluation") {
  std::mt19937_64 rng(72);
  const auto c = tu::random_coefficients(rng, 2, 9);
  const int M = 40;
  const auto s = synthesize(c, M);
  for (int m = 0; m < M; ++m)
    CHECK((s.values[m] - c.evaluate(kPeriod * m / M)).norm() <= 1e-12);
}

TEST_CASE("grid energy equals coefficient energy") {
  std::mt19937_64 rng(73);
  const long K = 6;
  const auto c = tu::random_coefficients(rng, 2, K);
  const int M = 2 * static_cast<int>(K) + 3;
  const auto s = synthesize(c, M);
  double grid = 0.0;
  for (const auto& v : s.values) grid += v.squaredNorm();
  grid /= M;
  double modes = 0.0;
  for (const auto& [k, v] : c.entries()) modes += v.squaredNorm();
  CHECK(grid == doctest::Approx(modes).epsilon(1e-12));
}

TEST_CASE("dirichlet sums truncate and saturate") {
  std::mt19937_64 rng(74);
  const auto c = tu::random_coefficients(rng, 2, 4);
  const double t = 1.3;
  CHECK((dirichlet_sum(c, 0, t) - c.at(0)).norm() <= 1e-14);
  CHECK((dirichlet_sum(c, 4, t) - c.evaluate(t)).norm() <= 1e-13);
  CHECK((dirichlet_sum(c, 99, t) - c.evaluate(t)).norm() <= 1e-13);
}

TEST_CASE("fejer sum weights modes linearly") {
  auto c = tu::unit_mode_forcing(3);
  const double t = 0.37;
  const Cplx base = std::polar(1.0, 3.0 * t);
  CHECK(std::abs(fejer_sum(c, 5, t)(0) - 0.5 * base) <= 1e-14);   // 1 - 3/6
  CHECK(std::abs(fejer_sum(c, 2, t)(0)) <= 1e-15);                // dropped
  const auto fc = fejer_coefficients(c, 5);
  CHECK(std::abs(fc.at(3)(0) - Cplx(0.5, 0.0)) <= 1e-15);
  CHECK(!fc.has(-3));
  for (double s : {0.0, 0.9, 4.4})
    CHECK((fejer_coefficients(c, 7).evaluate(s) - fejer_sum(c, 7, s)).norm() <= 1e-14);
}

TEST_CASE("fejer means never overshoot the sampled sup") {
  std::mt19937_64 rng(75);
  // real signal: conjugate-symmetric coefficients
  FourierCoefficients c(2);
  for (long k = 0; k <= 6; ++k) {
    Vec v = tu::random_vector(rng, 2);
    c.set(k, v);
    if (k > 0) c.set(-k, v.conjugate());
  }
  const int M = 64;
  const auto s = synthesize(c, M);
  double fmax = 0.0;
  for (const auto& v : s.values) fmax = std::max(fmax, v.norm());
  for (long l : {2L, 5L, 9L}) {
    const auto sm = synthesize(fejer_coefficients(c, l), M);
    double smax = 0.0;
    for (const auto& v : sm.values) smax = std::max(smax, v.norm());
    CHECK(smax <= fmax + 1e-10);
  }
}

TEST_CASE("fejer error on the pure cosine is exactly 1/(l+1)") {
  const auto c = cos_signal();
  const int M = 256;
  for (long l : {1L, 2L, 7L, 31L, 64L}) {
    double err = 0.0;
    for (int m = 0; m < M; ++m) {
      const double t = kPeriod * m / M;
      err = std::max(err, std::abs(fejer_sum(c, l, t)(0) - c.evaluate(t)(0)));
    }
    // max of |cos t|/(l+1) over a grid containing t = 0
    CHECK(std::abs(err - 1.0 / (l + 1)) <= 1e-12);
  }
}

TEST_CASE("cumulative integral of a single mode matches the closed form") {
  const long k = 2;
  auto f = tu::unit_mode_forcing(k);
  const int M = 64;
  const auto g = cumulative_integral(f, M);
  REQUIRE(static_cast<int>(g.size()) == M + 1);
  const Cplx ik(0.0, static_cast<double>(k));
  for (int j = 0; j <= M; ++j) {
    const double t = kPeriod * j / M;
    const Cplx want = (std::polar(1.0, k * t) - 1.0) / ik;
    CHECK(std::abs(g[j](0) - want) <= 1e-12);
  }
}

TEST_CASE("cumulative integral of a constant is linear") {
  FourierCoefficients f(1);
  f.set(0, Vec::Constant(1, Cplx(0.0, 1.5)));
  const auto g = cumulative_integral(f, 32);
  for (int j = 0; j <= 32; ++j) {
    const double t = kPeriod * j / 32;
    CHECK(std::abs(g[j](0) - Cplx(0.0, 1.5 * t)) <= 1e-12);
  }
}

TEST_CASE("quadrature coefficients recover periodic modes") {
  auto f = tu::unit_mode_forcing(2);
  std::vector<Vec> closed;
  const int M = 64;
  for (int j = 0; j <= M; ++j) closed.push_back(f.evaluate(kPeriod * j / M));
  CHECK(std::abs(fourier_coefficient(closed, 2)(0) - Cplx(1.0, 0.0)) <= 1e-10);
  CHECK(std::abs(fourier_coefficient(closed, 1)(0)) <= 1e-7);
  CHECK(std::abs(fourier_coefficient(closed, -5)(0)) <= 1e-7);
}

TEST_CASE("quadrature grid must have 4n cells") {
  std::vector<Vec> closed(64, Vec::Zero(1));  // 63 cells
  CHECK_THROWS_AS(fourier_coefficient(closed, 1), Error);
}

TEST_CASE("antiderivative identity holds for a drifting integral") {
  std::mt19937_64 rng(76);
  auto f = tu::random_coefficients(rng, 2, 8);
  // make sure the mean is genuinely nonzero so g drifts
  f.add(0, Vec::Constant(2, Cplx(0.7, 0.1)));
  const int M = 8192;
  const auto g_closed = cumulative_integral(f, M);
  FourierCoefficients g_hat(2);
  for (long k : {1L, 3L, 8L, 17L}) g_hat.set(k, fourier_coefficient(g_closed, k));
  for (long k : {1L, 3L, 8L, 17L}) CHECK(antiderivative_check(f, g_hat, k) <= 1e-9);
  CHECK_THROWS_AS(antiderivative_check(f, g_hat, 0), Error);
}

TEST_CASE("derivative then cumulative integral returns the signal") {
  std::mt19937_64 rng(77);
  auto u = tu::random_coefficients(rng, 2, 6);
  const auto g = cumulative_integral(u.differentiated(), 128);
  const Vec u0 = u.evaluate(0.0);
  for (int j = 0; j <= 128; ++j) {
    const double t = kPeriod * j / 128;
    CHECK((g[j] - (u.evaluate(t) - u0)).norm() <= 1e-11);
  }
}
